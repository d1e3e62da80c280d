"""
Pydantic schemas for CoopNet configuration and parameter validation.
"""
from enum import Enum
from pathlib import Path
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import (
    DEFAULT_NODES, DEFAULT_RADIUS, DEFAULT_PATHLOSS_EXPONENT, DEFAULT_NU,
    DEFAULT_SLOTS_PER_ITERATION, DEFAULT_ITERATIONS, DEFAULT_TOPOLOGIES,
    DEFAULT_MASTER_SEED, DEFAULT_RADIUS_BINS, DEFAULT_WORKERS,
    DEFAULT_INITIAL_FITNESS, DEFAULT_NU_SWEEP, DEFAULT_ALPHA_SWEEP,
    OUTPUT_DIR, UNIT_COST,
)


# ── Strategy ──────────────────────────────────────────────────────────────────

class StrategyVariant(str, Enum):
    DEF = "def"
    COOP = "coop"
    TFT = "tft"
    WSLS = "wsls"

    @classmethod
    def parse(cls, token: str) -> "StrategyVariant":
        """Case-insensitive lookup of the CLI tokens def/coop/tft/wsls."""
        try:
            return cls(token.strip().lower())
        except ValueError:
            choices = ", ".join(v.value for v in cls)
            raise ValueError(f"unknown strategy '{token}' (expected one of: {choices})")

    @property
    def label(self) -> str:
        return self.value.upper()

    @property
    def is_adaptive(self) -> bool:
        """TFT and WSLS change flags from fitness; DEF and COOP never do."""
        return self in (StrategyVariant.TFT, StrategyVariant.WSLS)


class ImprovementMode(str, Enum):
    LITERAL = "literal"
    DIFFERENTIAL = "differential"


class StrategyKind(BaseModel):
    model_config = ConfigDict(frozen=True)

    variant: StrategyVariant
    improvement_mode: ImprovementMode = ImprovementMode.DIFFERENTIAL
    tie_is_improvement: bool = False


# ── Channel ───────────────────────────────────────────────────────────────────

def check_exponent(v: float) -> float:
    if not 2.0 <= v <= 4.0:
        raise ValueError("path-loss exponent must lie in [2, 4]")
    return v


def check_nu(v: float) -> float:
    if not 0.0 < v < 1.0:
        raise ValueError("nu must lie strictly between 0 and 1")
    return v


class ChannelParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    pathloss_exponent: float = DEFAULT_PATHLOSS_EXPONENT
    nu: float = DEFAULT_NU
    unit_cost: float = UNIT_COST

    @field_validator("pathloss_exponent")
    @classmethod
    def exponent_range(cls, v):
        return check_exponent(v)

    @field_validator("nu")
    @classmethod
    def nu_range(cls, v):
        return check_nu(v)

    @field_validator("unit_cost")
    @classmethod
    def unit_cost_positive(cls, v):
        if v <= 0:
            raise ValueError("unit cost must be positive")
        return v


# ── Simulation config ─────────────────────────────────────────────────────────

class SimConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    nodes: int = DEFAULT_NODES
    radius: float = DEFAULT_RADIUS
    pathloss_exponent: float = DEFAULT_PATHLOSS_EXPONENT
    nu: float = DEFAULT_NU
    slots_per_iteration: int = DEFAULT_SLOTS_PER_ITERATION
    iterations: int = DEFAULT_ITERATIONS
    topologies: int = DEFAULT_TOPOLOGIES
    strategy: StrategyVariant = StrategyVariant.DEF
    master_seed: int = DEFAULT_MASTER_SEED
    improvement_mode: ImprovementMode = ImprovementMode.DIFFERENTIAL
    tie_is_improvement: bool = False
    bins: int = DEFAULT_RADIUS_BINS
    out_dir: Path = OUTPUT_DIR
    trace: bool = False
    workers: int = DEFAULT_WORKERS
    initial_fitness: float = DEFAULT_INITIAL_FITNESS
    cache_baseline: bool = False
    dump_topologies: bool = False
    nu_values: Tuple[float, ...] = DEFAULT_NU_SWEEP
    alpha_values: Tuple[float, ...] = DEFAULT_ALPHA_SWEEP
    unit_cost: float = Field(default=UNIT_COST, gt=0)

    @field_validator("nodes")
    @classmethod
    def nodes_minimum(cls, v):
        if v < 2:
            raise ValueError("nodes must be at least 2")
        return v

    @field_validator("radius")
    @classmethod
    def radius_positive(cls, v):
        if v <= 0:
            raise ValueError("radius must be positive")
        return v

    @field_validator("pathloss_exponent")
    @classmethod
    def exponent_range(cls, v):
        return check_exponent(v)

    @field_validator("nu")
    @classmethod
    def nu_range(cls, v):
        return check_nu(v)

    @field_validator("slots_per_iteration", "iterations", "topologies", "bins", "workers")
    @classmethod
    def at_least_one(cls, v, info):
        if v < 1:
            raise ValueError(f"{info.field_name} must be at least 1")
        return v

    @field_validator("master_seed")
    @classmethod
    def seed_fits_64_bits(cls, v):
        if not -(2 ** 63) <= v < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        return v

    @field_validator("strategy", mode="before")
    @classmethod
    def parse_strategy(cls, v):
        if isinstance(v, str):
            return StrategyVariant.parse(v)
        return v

    @field_validator("improvement_mode", mode="before")
    @classmethod
    def parse_mode(cls, v):
        if isinstance(v, str):
            return v.strip().lower()
        return v

    @field_validator("nu_values")
    @classmethod
    def sweep_nu_range(cls, v):
        if not v:
            raise ValueError("nu_values must not be empty")
        for nu in v:
            check_nu(nu)
        return v

    @field_validator("alpha_values")
    @classmethod
    def sweep_alpha_range(cls, v):
        if not v:
            raise ValueError("alpha_values must not be empty")
        for alpha in v:
            check_exponent(alpha)
        return v

    def channel_params(self) -> ChannelParams:
        return ChannelParams(
            pathloss_exponent=self.pathloss_exponent,
            nu=self.nu,
            unit_cost=self.unit_cost,
        )

    def strategy_kind(self) -> StrategyKind:
        return StrategyKind(
            variant=self.strategy,
            improvement_mode=self.improvement_mode,
            tie_is_improvement=self.tie_is_improvement,
        )

    def with_updates(self, **changes) -> "SimConfig":
        """Validated copy with some fields replaced."""
        return SimConfig(**{**self.model_dump(), **changes})
