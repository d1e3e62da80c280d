"""
CSV writers for experiment outputs. Every file is written in canonical
order so that reruns with the same seed are byte-identical.
"""

import logging
from pathlib import Path
from typing import Dict, Sequence

import pandas as pd

from models.state import RunResult
from simulation.geometry import Topology, save_topology

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["iteration", "slot", "tx", "rx", "relay", "tx_power", "relay_power"]


def write_csv(df: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(df)} rows to {path}")
    return path


def write_traces(runs: Sequence[RunResult], out_dir: Path) -> None:
    """Per-slot logs, one file per (strategy, topology)."""
    for run in runs:
        if run.slot_log is None:
            continue
        df = pd.DataFrame(
            [(r.iteration, r.slot, r.tx, r.rx, r.relay, r.tx_power, r.relay_power) for r in run.slot_log],
            columns=TRACE_COLUMNS,
        )
        # nullable ints so an absent relay is an empty field, not NaN
        df["relay"] = df["relay"].astype("Int64")
        path = Path(out_dir) / "traces" / run.strategy.value / f"topology_{run.topology_id}.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False, lineterminator="\n")
    logger.debug(f"Traces written under {Path(out_dir) / 'traces'}")


def write_topologies(topologies: Dict[int, Topology], out_dir: Path) -> None:
    for topology_id in sorted(topologies):
        save_topology(topologies[topology_id], Path(out_dir) / "topologies" / f"topology_{topology_id}.csv")
