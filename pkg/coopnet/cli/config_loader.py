"""
Resolve a SimConfig from defaults, the COOPNET_SEED environment variable,
an optional `key = value` config file and command-line overrides
(in increasing order of precedence).
"""

import os
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

from pydantic import ValidationError

from config import SEED_ENV_VAR
from models.schemas import SimConfig


class ConfigError(Exception):
    """Configuration problem tied to a key and to where the value came from."""

    def __init__(self, key: str, origin: str, message: str):
        self.key = key
        self.origin = origin
        self.message = message
        super().__init__(f"{origin}: '{key}': {message}")


def parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("true", "yes", "on", "1"):
        return True
    if value in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected true or false, got '{text}'")


def parse_float_list(text: str) -> Tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def parse_seed(text: str) -> int:
    return int(text.strip(), 0)


# config-file key -> (SimConfig field, value parser)
FILE_KEYS: Dict[str, Tuple[str, Callable[[str], Any]]] = {
    "nodes": ("nodes", int),
    "radius": ("radius", float),
    "alpha": ("pathloss_exponent", float),
    "pathloss_exponent": ("pathloss_exponent", float),
    "nu": ("nu", float),
    "slots": ("slots_per_iteration", int),
    "slots_per_iteration": ("slots_per_iteration", int),
    "iterations": ("iterations", int),
    "topologies": ("topologies", int),
    "strategy": ("strategy", str),
    "seed": ("master_seed", parse_seed),
    "master_seed": ("master_seed", parse_seed),
    "improvement_mode": ("improvement_mode", str),
    "tie_improves": ("tie_is_improvement", parse_bool),
    "tie_is_improvement": ("tie_is_improvement", parse_bool),
    "bins": ("bins", int),
    "out_dir": ("out_dir", Path),
    "trace": ("trace", parse_bool),
    "workers": ("workers", int),
    "initial_fitness": ("initial_fitness", float),
    "cache_baseline": ("cache_baseline", parse_bool),
    "dump_topologies": ("dump_topologies", parse_bool),
    "nu_values": ("nu_values", parse_float_list),
    "alpha_values": ("alpha_values", parse_float_list),
}


def read_config_file(path: Path) -> Dict[str, Tuple[Any, str, str]]:
    """
    Parse UTF-8 `key = value` lines; `#` starts a comment.

    Returns field -> (value, key as written, origin "path:line").
    """
    values: Dict[str, Tuple[Any, str, str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            origin = f"{path}:{lineno}"
            if "=" not in line:
                raise ConfigError(line, origin, "expected 'key = value'")
            key, _, text = (part.strip() for part in line.partition("="))
            key = key.lower()
            if key not in FILE_KEYS:
                raise ConfigError(key, origin, "unknown key")
            field, parser = FILE_KEYS[key]
            try:
                values[field] = (parser(text), key, origin)
            except ValueError as e:
                raise ConfigError(key, origin, f"cannot parse '{text}': {e}")
    return values


def parse_config(
    path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> SimConfig:
    """
    Build a validated SimConfig.

    overrides maps SimConfig field names to already-typed values (None means
    "not given"). Built-in defaults fill everything left unset.
    """
    environ = os.environ if environ is None else environ
    resolved: Dict[str, Tuple[Any, str, str]] = {}

    env_seed = environ.get(SEED_ENV_VAR)
    if env_seed:
        try:
            resolved["master_seed"] = (parse_seed(env_seed), SEED_ENV_VAR, "environment")
        except ValueError as e:
            raise ConfigError(SEED_ENV_VAR, "environment", f"cannot parse '{env_seed}': {e}")

    if path is not None:
        resolved.update(read_config_file(Path(path)))

    for field, value in (overrides or {}).items():
        if value is not None:
            resolved[field] = (value, field, "command line")

    try:
        return SimConfig(**{field: value for field, (value, _, _) in resolved.items()})
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else "config"
        _, key, origin = resolved.get(field, (None, field, "defaults"))
        raise ConfigError(key, origin, error["msg"])
