"""
Random network topologies in a disk and distance queries between nodes.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np
import pandas as pd

from simulation.errors import InvalidConfigurationError

logger = logging.getLogger(__name__)

TOPOLOGY_COLUMNS = ["node_id", "x", "y"]


@dataclass(frozen=True)
class Topology:
    """Node positions inside a disk of the given radius, centered at the origin."""
    positions: Tuple[Tuple[float, float], ...]
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidConfigurationError("radius must be positive")
        if len(self.positions) < 2:
            raise InvalidConfigurationError("a topology needs at least 2 nodes")
        # Small slack for positions that went through a text round-trip
        limit = self.radius * self.radius * (1.0 + 1e-12)
        for i, (x, y) in enumerate(self.positions):
            if x * x + y * y > limit:
                raise InvalidConfigurationError(f"node {i} lies outside the disk")

    @property
    def node_count(self) -> int:
        return len(self.positions)

    def distance_to_center(self, i: int) -> float:
        x, y = self.positions[i]
        return math.hypot(x, y)


def generate_topology(node_count: int, radius: float, rng: np.random.Generator) -> Topology:
    """
    Place nodes independently and uniformly by area over the disk.

    The radial coordinate is radius * sqrt(u); sampling the radius itself
    uniformly would crowd the center.
    """
    if node_count < 2:
        raise InvalidConfigurationError(f"node_count must be at least 2, got {node_count}")
    if radius <= 0:
        raise InvalidConfigurationError(f"radius must be positive, got {radius}")

    u = rng.random(node_count)
    theta = rng.random(node_count) * (2.0 * math.pi)
    rho = radius * np.sqrt(u)
    xs = rho * np.cos(theta)
    ys = rho * np.sin(theta)
    positions = tuple((float(x), float(y)) for x, y in zip(xs, ys))
    return Topology(positions=positions, radius=float(radius))


def distance(topology: Topology, i: int, j: int) -> float:
    """Euclidean distance between nodes i and j."""
    n = topology.node_count
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"node index out of range: ({i}, {j}) for {n} nodes")
    if i == j:
        return 0.0
    xi, yi = topology.positions[i]
    xj, yj = topology.positions[j]
    return math.hypot(xi - xj, yi - yj)


def distance_matrix(topology: Topology) -> list:
    """All pairwise distances as nested lists, value-identical to distance()."""
    n = topology.node_count
    return [[distance(topology, i, j) for j in range(n)] for i in range(n)]


def save_topology(topology: Topology, path: Path) -> None:
    """Write positions as CSV rows node_id,x,y."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df = pd.DataFrame(
        [(i, x, y) for i, (x, y) in enumerate(topology.positions)],
        columns=TOPOLOGY_COLUMNS,
    )
    df.to_csv(path, index=False, float_format="%.17g")
    logger.debug(f"Topology with {topology.node_count} nodes written to {path}")


def load_topology(path: Path, radius: float) -> Topology:
    """Read a topology written by save_topology."""
    df = pd.read_csv(path, float_precision="round_trip")
    missing = set(TOPOLOGY_COLUMNS) - set(df.columns)
    if missing:
        raise InvalidConfigurationError(f"{path}: missing columns {sorted(missing)}")
    df = df.sort_values("node_id")
    positions = tuple((float(x), float(y)) for x, y in zip(df["x"], df["y"]))
    return Topology(positions=positions, radius=radius)
