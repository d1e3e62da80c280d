"""
Propagation math: transmit-power requirements, cooperator regions,
relay selection and relay cost.

All powers are expressed in units of the folded constant K * P_R0
(params.unit_cost), so only relative values are meaningful.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from models.schemas import ChannelParams
from simulation.errors import InvalidDistanceError, InvalidPairError
from simulation.geometry import Topology, distance, distance_matrix


def _check_distance(d: float) -> None:
    if not d > 0:
        raise InvalidDistanceError(f"distance must be positive, got {d}")


def _check_pair(a: int, b: int) -> None:
    if a == b:
        raise InvalidPairError(f"transmitter and receiver must differ, got {a} twice")


def direct_power(d: float, params: ChannelParams) -> float:
    """Power for an unassisted transmission over distance d (P_D)."""
    _check_distance(d)
    return params.unit_cost * d ** params.pathloss_exponent


def reduced_power(d_ab: float, params: ChannelParams) -> float:
    """Transmitter power when a cooperator relays (P_I), range cut to nu * d_ab."""
    _check_distance(d_ab)
    return params.unit_cost * (params.nu * d_ab) ** params.pathloss_exponent


def relay_cost(d_cb: float, params: ChannelParams) -> float:
    """Power the selected relay spends forwarding to the receiver (P_C)."""
    return direct_power(d_cb, params)


def intermediate_nodes(topology: Topology, a: int, b: int) -> FrozenSet[int]:
    """Nodes strictly closer to both endpoints than the endpoints are to each other."""
    _check_pair(a, b)
    d_ab = distance(topology, a, b)
    return frozenset(
        c for c in range(topology.node_count)
        if c != a and c != b
        and distance(topology, a, c) < d_ab
        and distance(topology, c, b) < d_ab
    )


def eligible_cooperators(
    topology: Topology,
    a: int,
    b: int,
    coop_flags: Sequence[bool],
    params: ChannelParams,
) -> FrozenSet[int]:
    """Current cooperators inside the reduced range nu * d_AB of the transmitter."""
    _check_pair(a, b)
    d_ab = distance(topology, a, b)
    reach = params.nu * d_ab
    return frozenset(
        c for c in range(topology.node_count)
        if c != a and c != b and coop_flags[c]
        and distance(topology, a, c) <= reach
        and distance(topology, c, b) < d_ab
    )


def select_relay(topology: Topology, eligible: Iterable[int], b: int) -> Optional[int]:
    """Closest eligible cooperator to the receiver; ties go to the lowest index."""
    best = None
    best_key = None
    for c in eligible:
        key = (distance(topology, c, b), c)
        if best_key is None or key < best_key:
            best, best_key = c, key
    return best


@dataclass(frozen=True, slots=True)
class PairChannel:
    """Everything the engine needs about one ordered pair, precomputed."""
    distance: float
    direct: float
    reduced: float
    # nu-region members as (node, relay cost), ordered by (d_CB, node)
    candidates: Tuple[Tuple[int, float], ...]

    def pick_relay(self, coop_flags: Sequence[bool]) -> Optional[Tuple[int, float]]:
        for c, cost in self.candidates:
            if coop_flags[c]:
                return c, cost
        return None


def build_pair_table(topology: Topology, params: ChannelParams) -> List[List[Optional[PairChannel]]]:
    """
    Per-pair channel data for a fixed topology; table[a][b] is None when a == b.

    Selecting the first flagged candidate reproduces
    select_relay(eligible_cooperators(...)) because the candidates are the
    geometric part of the eligibility test in relay-preference order.
    """
    n = topology.node_count
    dist = distance_matrix(topology)
    table: List[List[Optional[PairChannel]]] = []
    for a in range(n):
        row: List[Optional[PairChannel]] = []
        for b in range(n):
            if a == b:
                row.append(None)
                continue
            d_ab = dist[a][b]
            reach = params.nu * d_ab
            region = sorted(
                (dist[c][b], c) for c in range(n)
                if c != a and c != b and dist[a][c] <= reach and dist[c][b] < d_ab
            )
            row.append(PairChannel(
                distance=d_ab,
                direct=direct_power(d_ab, params),
                reduced=reduced_power(d_ab, params),
                candidates=tuple((c, relay_cost(d_cb, params)) for d_cb, c in region),
            ))
        table.append(row)
    return table
