"""
Seeded random streams for reproducible experiments.

Every topology gets three independent numpy Generators derived from the
master seed, so that swapping the strategy never shifts the traffic draws.
"""

from dataclasses import dataclass

import numpy as np

# Stream tags mixed into the SeedSequence entropy
TOPOLOGY_STREAM = 0
TRAFFIC_STREAM = 1
MUTATION_STREAM = 2


@dataclass
class RunStreams:
    topology: np.random.Generator
    traffic: np.random.Generator
    mutation: np.random.Generator


def make_generator(master_seed: int, topology_id: int, stream: int) -> np.random.Generator:
    """Generator for one (topology, stream) substream of the master seed."""
    seq = np.random.SeedSequence([master_seed & 0xFFFFFFFFFFFFFFFF, topology_id, stream])
    return np.random.default_rng(seq)


def derive_streams(master_seed: int, topology_id: int) -> RunStreams:
    return RunStreams(
        topology=make_generator(master_seed, topology_id, TOPOLOGY_STREAM),
        traffic=make_generator(master_seed, topology_id, TRAFFIC_STREAM),
        mutation=make_generator(master_seed, topology_id, MUTATION_STREAM),
    )
