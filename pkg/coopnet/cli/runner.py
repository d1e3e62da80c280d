"""
Batch orchestration: one run per topology, optionally fanned out to a
process pool, merged back in topology order.
"""

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import pandas as pd
from tqdm import tqdm

from models.schemas import SimConfig, StrategyVariant
from models.state import RunResult
from simulation.engine import run_simulation
from simulation.geometry import Topology, generate_topology
from utils.rng import derive_streams, make_generator, TOPOLOGY_STREAM

logger = logging.getLogger(__name__)

CACHE_COLUMNS = ["topology_id", "node_id", "total_energy"]


@dataclass
class BatchResult:
    config: SimConfig
    topologies: Dict[int, Topology]
    runs: List[RunResult]


def build_topology(config: SimConfig, topology_id: int) -> Topology:
    rng = make_generator(config.master_seed, topology_id, TOPOLOGY_STREAM)
    return generate_topology(config.nodes, config.radius, rng)


def run_topology(config: SimConfig, topology_id: int) -> Tuple[Topology, RunResult]:
    """Generate one topology from its substream and simulate it."""
    streams = derive_streams(config.master_seed, topology_id)
    topology = generate_topology(config.nodes, config.radius, streams.topology)
    result = run_simulation(config, topology, streams.traffic, streams.mutation, topology_id)
    return topology, result


def run_batch(config: SimConfig) -> BatchResult:
    """Simulate config.topologies topologies; output order is by topology id."""
    label = config.strategy.label
    ids = range(config.topologies)
    collected: List[Tuple[Topology, RunResult]] = []
    logger.info(
        f"Running {label} on {config.topologies} topologies "
        f"(M={config.nodes}, T={config.slots_per_iteration}, N={config.iterations}, "
        f"nu={config.nu}, alpha={config.pathloss_exponent}, workers={config.workers})"
    )

    if config.workers == 1:
        for topology_id in tqdm(ids, desc=label, unit="topology", leave=False):
            collected.append(run_topology(config, topology_id))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(run_topology, config, topology_id) for topology_id in ids]
            for future in tqdm(as_completed(futures), total=len(futures), desc=label,
                               unit="topology", leave=False):
                collected.append(future.result())

    collected.sort(key=lambda item: item[1].topology_id)
    return BatchResult(
        config=config,
        topologies={run.topology_id: topology for topology, run in collected},
        runs=[run for _, run in collected],
    )


# ── DEF baseline ──────────────────────────────────────────────────────────────

def baseline_key(config: SimConfig) -> str:
    """Everything the all-defector energies depend on."""
    parts = (
        config.master_seed, config.nodes, config.radius, config.pathloss_exponent,
        config.slots_per_iteration, config.iterations, config.topologies, config.unit_cost,
    )
    return hashlib.sha256(repr(parts).encode("utf-8")).hexdigest()[:16]


def baseline_cache_path(config: SimConfig) -> Path:
    return config.out_dir / "cache" / f"def_{baseline_key(config)}.csv"


def _load_cached_baseline(config: SimConfig, path: Path) -> BatchResult:
    df = pd.read_csv(path, float_precision="round_trip").sort_values(["topology_id", "node_id"])
    topologies: Dict[int, Topology] = {}
    runs: List[RunResult] = []
    for topology_id, group in df.groupby("topology_id", sort=True):
        topology_id = int(topology_id)
        energies = [float(e) for e in group["total_energy"]]
        topologies[topology_id] = build_topology(config, topology_id)
        runs.append(RunResult(
            strategy=StrategyVariant.DEF,
            topology_id=topology_id,
            iterations=config.iterations,
            total_energy=energies,
            coop_iterations=[0] * len(energies),
            final_states=[],
            coop_trajectory=[0] * config.iterations,
        ))
    return BatchResult(config=config, topologies=topologies, runs=runs)


def _store_baseline(batch: BatchResult, path: Path) -> None:
    rows = [
        (run.topology_id, node, energy)
        for run in batch.runs
        for node, energy in enumerate(run.total_energy)
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(rows, columns=CACHE_COLUMNS).to_csv(path, index=False, float_format="%.17g")


def run_baseline(config: SimConfig) -> BatchResult:
    """DEF runs on the same topology and traffic substreams as config."""
    baseline_config = config.with_updates(strategy=StrategyVariant.DEF)
    if not config.cache_baseline:
        return run_batch(baseline_config)

    path = baseline_cache_path(baseline_config)
    if path.exists():
        if not config.trace:
            logger.info(f"Loading cached DEF baseline from {path}")
            return _load_cached_baseline(baseline_config, path)
        # the cache holds energies only, no slot logs
        logger.warning(f"Ignoring cached DEF baseline at {path}: --trace needs the slot logs")
    batch = run_batch(baseline_config)
    _store_baseline(batch, path)
    logger.info(f"DEF baseline cached at {path}")
    return batch
