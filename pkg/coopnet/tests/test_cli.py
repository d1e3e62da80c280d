"""
End-to-end tests for the experiment commands at a small scale
"""
import pandas as pd
import pytest
from pydantic import ValidationError

from cli.commands import cmd_compare, cmd_run, cmd_sweep_alpha, cmd_sweep_nu
from cli.runner import baseline_cache_path, run_batch
from main import main
from simulation.errors import SimulationError


def _read(path):
    return pd.read_csv(path)


def _header(path):
    return path.read_text().splitlines()[0]


def test_run_writes_reports(small_config):
    config = small_config.with_updates(strategy="tft")
    assert cmd_run(config) == 0
    out = config.out_dir
    assert _header(out / "summary.csv") == "strategy,mean_E,std_E"
    assert _header(out / "per_node.csv") == "topology_id,node_id,dist_center,normalized_energy,coop_frequency"
    assert _header(out / "radius_curves.csv") == "bin_center,strategy,mean_energy,mean_coop_frequency,count"
    assert _header(out / "coop_trajectory.csv") == "iteration,strategy,mean_coop_fraction"

    summary = _read(out / "summary.csv")
    assert summary["strategy"].tolist() == ["TFT"]
    per_node = _read(out / "per_node.csv")
    assert len(per_node) == config.nodes * config.topologies
    assert per_node["coop_frequency"].between(0.0, 1.0).all()
    radius = _read(out / "radius_curves.csv")
    assert len(radius) == config.bins
    assert radius["count"].sum() == config.nodes * config.topologies


def test_def_run_normalizes_to_one(small_config):
    assert cmd_run(small_config) == 0
    summary = _read(small_config.out_dir / "summary.csv")
    assert summary["mean_E"].tolist() == [1.0]


def test_compare_rows_and_ordering(small_config):
    assert cmd_compare(small_config) == 0
    out = small_config.out_dir
    summary = _read(out / "summary.csv")
    assert summary["strategy"].tolist() == ["DEF", "COOP", "TFT", "WSLS"]
    energy = dict(zip(summary["strategy"], summary["mean_E"]))
    assert energy["DEF"] == 1.0
    assert energy["COOP"] < energy["DEF"]
    for variant in ("def", "coop", "tft", "wsls"):
        assert (out / f"per_node_{variant}.csv").exists()
    assert len(_read(out / "radius_curves.csv")) == 4 * small_config.bins


def test_rerun_is_byte_identical(small_config, tmp_path):
    first = small_config.with_updates(out_dir=tmp_path / "a")
    second = small_config.with_updates(out_dir=tmp_path / "b")
    assert cmd_compare(first) == 0
    assert cmd_compare(second) == 0
    names = sorted(p.name for p in first.out_dir.iterdir())
    assert names == sorted(p.name for p in second.out_dir.iterdir())
    for name in names:
        assert (first.out_dir / name).read_bytes() == (second.out_dir / name).read_bytes()


def test_single_nu_sweep_matches_run(small_config, tmp_path):
    config = small_config.with_updates(strategy="wsls")
    assert cmd_run(config.with_updates(out_dir=tmp_path / "run")) == 0
    assert cmd_sweep_nu(config.with_updates(out_dir=tmp_path / "sweep"), [config.nu]) == 0

    sweep = _read(tmp_path / "sweep" / "nu_sweep.csv")
    assert list(sweep.columns) == ["nu", "strategy", "mean_E"]
    run = _read(tmp_path / "run" / "summary.csv")
    assert sweep["mean_E"].tolist() == run["mean_E"].tolist()


def test_nu_sweep_rows(small_config):
    config = small_config.with_updates(strategy="coop")
    assert cmd_sweep_nu(config, [0.2, 0.5, 0.8]) == 0
    sweep = _read(config.out_dir / "nu_sweep.csv")
    assert sweep["nu"].tolist() == [0.2, 0.5, 0.8]
    assert set(sweep["strategy"]) == {"COOP"}


def test_invalid_sweep_value_rejected_before_running(small_config):
    with pytest.raises((ValidationError, SimulationError)):
        cmd_sweep_nu(small_config, [0.3, 1.2])
    assert not (small_config.out_dir / "nu_sweep.csv").exists()


def test_alpha_sweep(small_config):
    config = small_config.with_updates(strategy="coop")
    assert cmd_sweep_alpha(config, [2.0, 4.0]) == 0
    sweep = _read(config.out_dir / "alpha_sweep.csv")
    assert list(sweep.columns) == ["alpha", "strategy", "mean_E"]
    assert sweep["alpha"].tolist() == [2.0, 4.0]
    assert sweep["mean_E"].iloc[-1] < 1.0


def test_workers_do_not_change_results(small_config):
    config = small_config.with_updates(strategy="tft")
    sequential = run_batch(config)
    parallel = run_batch(config.with_updates(workers=2))
    assert [r.topology_id for r in parallel.runs] == list(range(config.topologies))
    assert [r.total_energy for r in sequential.runs] == [r.total_energy for r in parallel.runs]
    assert [r.coop_iterations for r in sequential.runs] == [r.coop_iterations for r in parallel.runs]
    assert sequential.topologies == parallel.topologies


def test_trace_and_topology_dumps(small_config):
    config = small_config.with_updates(strategy="tft", trace=True, dump_topologies=True)
    assert cmd_run(config) == 0
    out = config.out_dir
    for variant in ("def", "tft"):
        for topology_id in range(config.topologies):
            trace = out / "traces" / variant / f"topology_{topology_id}.csv"
            assert _header(trace) == "iteration,slot,tx,rx,relay,tx_power,relay_power"
            assert len(_read(trace)) == config.slots_per_iteration * config.iterations
    assert _header(out / "topologies" / "topology_0.csv") == "node_id,x,y"


def test_def_trace_has_no_relays(small_config):
    config = small_config.with_updates(trace=True)
    assert cmd_run(config) == 0
    trace = _read(config.out_dir / "traces" / "def" / "topology_0.csv")
    assert trace["relay"].isna().all()
    assert (trace["relay_power"] == 0.0).all()


def test_cached_baseline_reproduces_results(small_config, tmp_path):
    plain = small_config.with_updates(out_dir=tmp_path / "plain")
    cached = small_config.with_updates(out_dir=tmp_path / "cached", cache_baseline=True)
    assert cmd_compare(plain) == 0
    assert cmd_compare(cached) == 0
    assert baseline_cache_path(cached.with_updates(strategy="def")).exists()
    # second pass loads the baseline from disk
    assert cmd_compare(cached) == 0
    assert (plain.out_dir / "summary.csv").read_bytes() == (cached.out_dir / "summary.csv").read_bytes()


def test_cached_baseline_still_writes_def_traces(small_config):
    cached = small_config.with_updates(strategy="coop", cache_baseline=True)
    assert cmd_run(cached) == 0
    assert baseline_cache_path(cached.with_updates(strategy="def")).exists()

    traced = cached.with_updates(trace=True)
    assert cmd_run(traced) == 0
    for variant in ("def", "coop"):
        for topology_id in range(traced.topologies):
            trace = traced.out_dir / "traces" / variant / f"topology_{topology_id}.csv"
            assert len(_read(trace)) == traced.slots_per_iteration * traced.iterations


def test_unwritable_output_returns_one(small_config, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    config = small_config.with_updates(out_dir=blocker / "out")
    assert cmd_run(config) == 1


def test_main_rejects_bad_config(tmp_path):
    assert main(["run", "--nu", "1.5", "--out-dir", str(tmp_path)]) == 2
    assert not (tmp_path / "summary.csv").exists()


def test_main_rejects_bad_config_file(tmp_path):
    path = tmp_path / "sim.conf"
    path.write_text("nu = 1.5\n", encoding="utf-8")
    assert main(["compare", "--config", str(path), "--out-dir", str(tmp_path)]) == 2


def test_main_runs_small_experiment(tmp_path):
    argv = [
        "run", "--strategy", "coop", "--nodes", "6", "--slots", "10", "--iterations", "3",
        "--topologies", "2", "--seed", "7", "--out-dir", str(tmp_path),
    ]
    assert main(argv) == 0
    summary = _read(tmp_path / "summary.csv")
    assert summary["strategy"].tolist() == ["COOP"]


def test_compare_single_topology(small_config):
    config = small_config.with_updates(topologies=1)
    assert cmd_compare(config) == 0
    summary = _read(config.out_dir / "summary.csv")
    assert len(summary) == 4
    assert summary["mean_E"].iloc[0] == 1.0
