"""
Unit tests for config resolution: defaults, file, environment and flags
"""
from pathlib import Path

import pytest

from cli.config_loader import ConfigError, parse_bool, parse_config, parse_float_list, read_config_file
from config import DEFAULT_MASTER_SEED
from models.schemas import ImprovementMode, StrategyVariant


def _write(tmp_path, text):
    path = tmp_path / "sim.conf"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_without_file_or_flags():
    config = parse_config(environ={})
    assert config.nodes == 30
    assert config.radius == 1.0
    assert config.pathloss_exponent == 4.0
    assert config.nu == 0.39
    assert config.strategy is StrategyVariant.DEF
    assert config.improvement_mode is ImprovementMode.DIFFERENTIAL
    assert config.tie_is_improvement is False
    assert config.master_seed == DEFAULT_MASTER_SEED


def test_file_values_and_comments(tmp_path):
    path = _write(tmp_path, (
        "# small experiment\n"
        "nodes = 12\n"
        "\n"
        "alpha = 3.0   # path loss\n"
        "strategy = WSLS\n"
        "seed = 0x2A\n"
        "tie_improves = yes\n"
        "nu_values = 0.2, 0.4\n"
    ))
    config = parse_config(path, environ={})
    assert config.nodes == 12
    assert config.pathloss_exponent == 3.0
    assert config.strategy is StrategyVariant.WSLS
    assert config.master_seed == 42
    assert config.tie_is_improvement is True
    assert config.nu_values == (0.2, 0.4)


def test_out_of_range_value_names_key_and_line(tmp_path):
    path = _write(tmp_path, "nodes = 10\nnu = 1.5\n")
    with pytest.raises(ConfigError) as exc:
        parse_config(path, environ={})
    assert exc.value.key == "nu"
    assert exc.value.origin == f"{path}:2"
    assert "nu" in str(exc.value)


def test_unknown_key(tmp_path):
    path = _write(tmp_path, "nodes = 10\ncolour = blue\n")
    with pytest.raises(ConfigError) as exc:
        read_config_file(path)
    assert exc.value.key == "colour"
    assert exc.value.origin.endswith(":2")


def test_unparsable_value(tmp_path):
    path = _write(tmp_path, "iterations = many\n")
    with pytest.raises(ConfigError) as exc:
        parse_config(path, environ={})
    assert exc.value.key == "iterations"


def test_flag_overrides_file(tmp_path):
    path = _write(tmp_path, "nodes = 12\nnu = 0.3\n")
    config = parse_config(path, overrides={"nodes": 20, "nu": None}, environ={})
    assert config.nodes == 20
    assert config.nu == 0.3


def test_invalid_flag_reported_as_command_line():
    with pytest.raises(ConfigError) as exc:
        parse_config(overrides={"pathloss_exponent": 5.0}, environ={})
    assert exc.value.key == "pathloss_exponent"
    assert exc.value.origin == "command line"


def test_environment_seed_is_a_fallback(tmp_path):
    env = {"COOPNET_SEED": "777"}
    assert parse_config(environ=env).master_seed == 777

    path = _write(tmp_path, "seed = 5\n")
    assert parse_config(path, environ=env).master_seed == 5
    assert parse_config(path, overrides={"master_seed": 9}, environ=env).master_seed == 9


def test_bad_environment_seed():
    with pytest.raises(ConfigError) as exc:
        parse_config(environ={"COOPNET_SEED": "abc"})
    assert exc.value.origin == "environment"


def test_value_parsers():
    assert parse_bool("True") is True
    assert parse_bool("off") is False
    with pytest.raises(ValueError):
        parse_bool("maybe")
    assert parse_float_list("0.1,0.2, 0.3") == (0.1, 0.2, 0.3)


def test_missing_file_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        parse_config(Path(tmp_path) / "absent.conf", environ={})
