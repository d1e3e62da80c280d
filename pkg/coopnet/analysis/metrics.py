"""
Aggregation of finished runs into normalized energy statistics, radius
curves and cooperation frequencies.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import numpy as np
import pandas as pd

from models.state import RunResult
from simulation.errors import InvalidConfigurationError
from simulation.geometry import Topology

logger = logging.getLogger(__name__)

PER_NODE_COLUMNS = ["topology_id", "node_id", "dist_center", "normalized_energy", "coop_frequency"]
SUMMARY_COLUMNS = ["strategy", "mean_E", "std_E"]
RADIUS_COLUMNS = ["bin_center", "strategy", "mean_energy", "mean_coop_frequency", "count"]
TRAJECTORY_COLUMNS = ["iteration", "strategy", "mean_coop_fraction"]


@dataclass
class MetricsReport:
    strategy: str
    mean_energy: float
    std_energy: float
    # bin_center, mean_energy, mean_coop_frequency, count
    radius_curves: pd.DataFrame
    per_node_records: pd.DataFrame

    @property
    def radius_energy_curve(self) -> List[tuple]:
        return list(zip(self.radius_curves["bin_center"], self.radius_curves["mean_energy"]))

    @property
    def radius_coop_curve(self) -> List[tuple]:
        return list(zip(self.radius_curves["bin_center"], self.radius_curves["mean_coop_frequency"]))

    def curve_spread(self) -> float:
        """Max minus min of the radius-energy curve over non-empty bins."""
        filled = self.radius_curves[self.radius_curves["count"] > 0]["mean_energy"]
        return float(filled.max() - filled.min())


def _sorted_runs(runs: Iterable[RunResult]) -> List[RunResult]:
    return sorted(runs, key=lambda r: r.topology_id)


def normalization_constant(def_runs: Iterable[RunResult]) -> float:
    """Mean per-node energy under all-defector play, pooled over topologies."""
    runs = _sorted_runs(def_runs)
    if not runs:
        raise InvalidConfigurationError("DEF baseline needs at least one run")
    energies = np.array([e for run in runs for e in run.total_energy], dtype=float)
    return float(energies.mean())


def cooperation_frequency(run: RunResult, node: int) -> float:
    """Fraction of the run's iterations the node spent cooperating."""
    return run.coop_iterations[node] / run.iterations


def per_node_frame(runs: Iterable[RunResult], topologies: Dict[int, Topology], norm: float) -> pd.DataFrame:
    rows = []
    for run in _sorted_runs(runs):
        topology = topologies[run.topology_id]
        for node in range(run.node_count):
            rows.append((
                run.topology_id,
                node,
                topology.distance_to_center(node),
                run.total_energy[node] / norm,
                cooperation_frequency(run, node),
            ))
    return pd.DataFrame(rows, columns=PER_NODE_COLUMNS)


def radial_bin_index(dist_center: pd.Series, radius: float, bins: int) -> pd.Series:
    """Bin k covers (k*w, (k+1)*w] with w = radius / bins; the center joins bin 0."""
    width = radius / bins
    index = np.ceil(dist_center.to_numpy() / width).astype(int) - 1
    return pd.Series(np.clip(index, 0, bins - 1), index=dist_center.index)


def aggregate(
    runs: Sequence[RunResult],
    topologies: Dict[int, Topology],
    norm: float,
    bins: int,
) -> MetricsReport:
    """
    Pool every (topology, node) record and summarize it.

    The standard deviation is the population one over the pooled records;
    radius curves use equal-width bins over (0, r].
    """
    runs = _sorted_runs(runs)
    if not runs:
        raise InvalidConfigurationError("cannot aggregate an empty set of runs")
    if not norm > 0:
        raise InvalidConfigurationError(f"normalization constant must be positive, got {norm}")
    if bins < 1:
        raise InvalidConfigurationError(f"bins must be at least 1, got {bins}")

    strategy = runs[0].strategy.label
    records = per_node_frame(runs, topologies, norm)
    # Statistics on raw energies, divided once, so DEF over itself is exactly 1
    raw = np.array([e for run in runs for e in run.total_energy], dtype=float)
    mean_energy = float(raw.mean() / norm)
    std_energy = float(raw.std(ddof=0) / norm)

    radius = topologies[runs[0].topology_id].radius
    width = radius / bins
    records["bin"] = radial_bin_index(records["dist_center"], radius, bins)
    grouped = records.groupby("bin").agg(
        mean_energy=("normalized_energy", "mean"),
        mean_coop_frequency=("coop_frequency", "mean"),
        count=("node_id", "size"),
    )
    curves = pd.DataFrame({"bin": range(bins)})
    curves["bin_center"] = (curves["bin"] + 0.5) * width
    curves = curves.merge(grouped, left_on="bin", right_index=True, how="left")
    curves["count"] = curves["count"].fillna(0).astype(int)
    curves = curves.drop(columns="bin").reset_index(drop=True)
    records = records.drop(columns="bin")

    logger.info(f"{strategy}: mean_E={mean_energy:.5f} std_E={std_energy:.5f} over {len(records)} nodes")
    return MetricsReport(
        strategy=strategy,
        mean_energy=mean_energy,
        std_energy=std_energy,
        radius_curves=curves[["bin_center", "mean_energy", "mean_coop_frequency", "count"]],
        per_node_records=records,
    )


# ── Report frames ─────────────────────────────────────────────────────────────

def summary_frame(reports: Sequence[MetricsReport]) -> pd.DataFrame:
    return pd.DataFrame(
        [(r.strategy, r.mean_energy, r.std_energy) for r in reports],
        columns=SUMMARY_COLUMNS,
    )


def radius_frame(reports: Sequence[MetricsReport]) -> pd.DataFrame:
    frames = []
    for report in reports:
        curves = report.radius_curves.copy()
        curves.insert(1, "strategy", report.strategy)
        frames.append(curves)
    return pd.concat(frames, ignore_index=True)[RADIUS_COLUMNS]


def trajectory_frame(runs_by_strategy: Dict[str, Sequence[RunResult]]) -> pd.DataFrame:
    """Mean fraction of cooperators in each iteration, per strategy."""
    frames = []
    for strategy, runs in runs_by_strategy.items():
        runs = _sorted_runs(runs)
        counts = np.array([run.coop_trajectory for run in runs], dtype=float)
        fractions = counts / runs[0].node_count
        frames.append(pd.DataFrame({
            "iteration": range(counts.shape[1]),
            "strategy": strategy,
            "mean_coop_fraction": fractions.mean(axis=0),
        }))
    return pd.concat(frames, ignore_index=True)[TRAJECTORY_COLUMNS]

