"""
Experiment commands: run, compare, sweep-nu, sweep-alpha.

Each command runs the DEF baseline on the same topology and traffic
substreams as the strategies it normalizes, then writes its CSV reports.
Commands return a process exit status.
"""

import functools
import logging
from typing import Dict, List, Sequence, Tuple

import pandas as pd

from analysis.metrics import (
    MetricsReport, aggregate, normalization_constant, radius_frame,
    summary_frame, trajectory_frame,
)
from cli.reports import write_csv, write_topologies, write_traces
from cli.runner import BatchResult, run_baseline, run_batch
from models.schemas import SimConfig, StrategyVariant

logger = logging.getLogger(__name__)

COMPARE_ORDER = (StrategyVariant.DEF, StrategyVariant.COOP, StrategyVariant.TFT, StrategyVariant.WSLS)


def _strategy_batch(config: SimConfig, baseline: BatchResult) -> BatchResult:
    """Runs for config.strategy; DEF reuses the baseline it already has."""
    if config.strategy is StrategyVariant.DEF:
        return baseline
    return run_batch(config)


def _evaluate(config: SimConfig, baseline: BatchResult, norm: float) -> Tuple[BatchResult, MetricsReport]:
    batch = _strategy_batch(config, baseline)
    report = aggregate(batch.runs, batch.topologies, norm, config.bins)
    return batch, report


def _write_side_outputs(config: SimConfig, batches: Sequence[BatchResult]) -> None:
    if config.trace:
        for batch in batches:
            write_traces(batch.runs, config.out_dir)
    if config.dump_topologies:
        write_topologies(batches[0].topologies, config.out_dir)


def _with_io_guard(command):
    @functools.wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)
        except OSError as e:
            logger.error(f"{command.__name__} failed on I/O: {e}")
            return 1
    return wrapper


@_with_io_guard
def cmd_run(config: SimConfig) -> int:
    """DEF baseline plus the configured strategy; writes summary, per-node and radius CSVs."""
    baseline = run_baseline(config)
    norm = normalization_constant(baseline.runs)
    logger.info(f"DEF normalization constant: {norm:.6g}")

    batch, report = _evaluate(config, baseline, norm)
    out = config.out_dir
    write_csv(summary_frame([report]), out / "summary.csv")
    write_csv(report.per_node_records, out / "per_node.csv")
    write_csv(radius_frame([report]), out / "radius_curves.csv")
    write_csv(trajectory_frame({report.strategy: batch.runs}), out / "coop_trajectory.csv")
    _write_side_outputs(config, [baseline, batch] if batch is not baseline else [baseline])
    return 0


@_with_io_guard
def cmd_compare(config: SimConfig) -> int:
    """All four strategies on the shared seed set, one summary row each."""
    baseline = run_baseline(config)
    norm = normalization_constant(baseline.runs)

    reports: List[MetricsReport] = []
    batches: List[BatchResult] = [baseline]
    runs_by_strategy: Dict[str, list] = {}
    for variant in COMPARE_ORDER:
        batch, report = _evaluate(config.with_updates(strategy=variant), baseline, norm)
        reports.append(report)
        runs_by_strategy[report.strategy] = batch.runs
        if batch is not baseline:
            batches.append(batch)
        write_csv(report.per_node_records, config.out_dir / f"per_node_{variant.value}.csv")

    write_csv(summary_frame(reports), config.out_dir / "summary.csv")
    write_csv(radius_frame(reports), config.out_dir / "radius_curves.csv")
    write_csv(trajectory_frame(runs_by_strategy), config.out_dir / "coop_trajectory.csv")
    _write_side_outputs(config, batches)
    for report in reports:
        logger.info(f"{report.strategy:>5}: mean_E={report.mean_energy:.5f} std_E={report.std_energy:.5f}")
    return 0


@_with_io_guard
def cmd_sweep_nu(config: SimConfig, nu_values: Sequence[float]) -> int:
    """Mean normalized energy of the configured strategy for each nu."""
    # validates every nu before any simulation starts
    configs = [config.with_updates(nu=nu) for nu in nu_values]
    # the all-defector energies do not depend on nu
    baseline = run_baseline(config)
    norm = normalization_constant(baseline.runs)

    rows = []
    for swept in configs:
        _, report = _evaluate(swept, baseline, norm)
        rows.append((swept.nu, report.strategy, report.mean_energy))
        logger.info(f"nu={swept.nu}: mean_E={report.mean_energy:.5f}")
    write_csv(pd.DataFrame(rows, columns=["nu", "strategy", "mean_E"]), config.out_dir / "nu_sweep.csv")
    return 0


@_with_io_guard
def cmd_sweep_alpha(config: SimConfig, alpha_values: Sequence[float]) -> int:
    """Mean normalized energy of the configured strategy for each path-loss exponent."""
    configs = [config.with_updates(pathloss_exponent=alpha) for alpha in alpha_values]

    rows = []
    for swept in configs:
        # each exponent needs its own reference
        baseline = run_baseline(swept)
        norm = normalization_constant(baseline.runs)
        _, report = _evaluate(swept, baseline, norm)
        rows.append((swept.pathloss_exponent, report.strategy, report.mean_energy))
        logger.info(f"alpha={swept.pathloss_exponent}: mean_E={report.mean_energy:.5f}")
    write_csv(pd.DataFrame(rows, columns=["alpha", "strategy", "mean_E"]), config.out_dir / "alpha_sweep.csv")
    return 0
