"""
Two-timescale simulation: time slots inside iterations inside a run.

Each slot activates one random ordered transmitter/receiver pair. Energy
spent is booked on the payers, and every node's fitness moves by its
per-slot change; at iteration boundaries nodes may switch between
cooperating and defecting according to the run's strategy.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models.schemas import ChannelParams, SimConfig, StrategyVariant
from models.state import (
    NodeState, RunResult, SlotContext, SlotOutcome, SlotRecord, SlotRole,
)
from simulation.channel import (
    PairChannel, build_pair_table, direct_power, eligible_cooperators,
    reduced_power, relay_cost, select_relay,
)
from simulation.errors import InvalidConfigurationError
from simulation.geometry import Topology, distance
from simulation.strategy import decide

logger = logging.getLogger(__name__)


# ── Traffic ───────────────────────────────────────────────────────────────────

def pick_pair(node_count: int, rng: np.random.Generator) -> Tuple[int, int]:
    """One ordered pair (A, B), A != B, uniform over all M*(M-1) pairs."""
    if node_count < 2:
        raise InvalidConfigurationError(f"node_count must be at least 2, got {node_count}")
    a = int(rng.integers(node_count))
    b = int(rng.integers(node_count - 1))
    if b >= a:
        b += 1
    return a, b


def draw_pairs(node_count: int, count: int, rng: np.random.Generator) -> Tuple[List[int], List[int]]:
    """Batch version of pick_pair for a whole iteration."""
    if node_count < 2:
        raise InvalidConfigurationError(f"node_count must be at least 2, got {node_count}")
    a = rng.integers(node_count, size=count)
    b = rng.integers(node_count - 1, size=count)
    b = b + (b >= a)
    return a.tolist(), b.tolist()


# ── Single slot ───────────────────────────────────────────────────────────────

def resolve_slot(a: int, b: int, pair: PairChannel, coop_flags: Sequence[bool]) -> SlotOutcome:
    chosen = pair.pick_relay(coop_flags)
    if chosen is None:
        return SlotOutcome(
            transmitter=a, receiver=b, relay=None,
            transmitter_power=pair.direct, relay_power=0.0, benefit=0.0,
            pair_direct_power=pair.direct, pair_reduced_power=pair.reduced,
        )
    relay, cost = chosen
    return SlotOutcome(
        transmitter=a, receiver=b, relay=relay,
        transmitter_power=pair.reduced, relay_power=cost,
        benefit=pair.direct - pair.reduced,
        pair_direct_power=pair.direct, pair_reduced_power=pair.reduced,
    )


def delta_fitness(node_role: SlotRole, slot: SlotOutcome, params: ChannelParams) -> float:
    """
    Per-slot fitness change of one node.

    A transmitter without a cooperator loses the benefit it could have had
    (P_D - P_I); the selected relay loses its forwarding cost; everyone else,
    bystander cooperators included, is unaffected. Never positive.
    """
    if node_role is SlotRole.TRANSMITTER:
        if slot.relay is None:
            return -(slot.pair_direct_power - slot.pair_reduced_power)
        return 0.0
    if node_role is SlotRole.SELECTED_RELAY:
        return -slot.relay_power
    return 0.0


def classify_role(
    node: int,
    slot: SlotOutcome,
    topology: Topology,
    coop_flags: Sequence[bool],
    params: ChannelParams,
) -> Tuple[SlotRole, SlotContext]:
    """
    Role of a node in a finished slot together with its fitness indicators.

    A node counts as connected to the active transmitter when it lies within
    the transmitter's effective range: nu * d_AB when relayed, d_AB otherwise.
    """
    a, b = slot.transmitter, slot.receiver
    if node == a:
        ctx = SlotContext(
            has_packet=True,
            has_cooperator=slot.relay is not None,
            connected_to_active=False,
            active_incoming=0,
        )
        return SlotRole.TRANSMITTER, ctx

    d_ab = distance(topology, a, b)
    reach = params.nu * d_ab if slot.relay is not None else d_ab
    connected = distance(topology, a, node) <= reach
    ctx = SlotContext(
        has_packet=False,
        has_cooperator=False,
        connected_to_active=connected,
        active_incoming=1 if connected else 0,
    )
    if node == slot.relay:
        return SlotRole.SELECTED_RELAY, ctx
    if connected and coop_flags[node]:
        return SlotRole.BYSTANDER_COOPERATOR, ctx
    return SlotRole.IDLE, ctx


def fitness_from_indicators(node: int, ctx: SlotContext, is_cooperator: bool, slot: SlotOutcome) -> float:
    """The per-slot change written out term by term from the indicators."""
    alpha = 1 if ctx.has_packet else 0
    beta = 1 if ctx.has_cooperator else 0
    gamma = 1 if ctx.connected_to_active else 0
    delta = 1 if is_cooperator else 0
    # only the selected relay pays; J is at most 1 with one active pair
    p_c = slot.relay_power if node == slot.relay and ctx.active_incoming else 0.0
    return -(alpha * (1 - beta) * (slot.pair_direct_power - slot.pair_reduced_power)) - gamma * delta * p_c


def settle_slot(outcome: SlotOutcome, node_states: List[NodeState], params: ChannelParams) -> Tuple[float, float]:
    """
    Book the slot's payments and fitness changes.

    Returns the fitness changes of the transmitter and of the relay (0.0 when
    there is none); all other nodes are untouched since their change is zero.
    """
    tx = node_states[outcome.transmitter]
    tx.total_energy += outcome.transmitter_power
    tx_delta = delta_fitness(SlotRole.TRANSMITTER, outcome, params)
    tx.fitness += tx_delta

    relay_delta = 0.0
    if outcome.relay is not None:
        relay = node_states[outcome.relay]
        relay.total_energy += outcome.relay_power
        relay_delta = delta_fitness(SlotRole.SELECTED_RELAY, outcome, params)
        relay.fitness += relay_delta
    return tx_delta, relay_delta


def run_slot(
    topology: Topology,
    node_states: List[NodeState],
    params: ChannelParams,
    rng: np.random.Generator,
    table: Optional[List[List[Optional[PairChannel]]]] = None,
) -> SlotOutcome:
    """Activate one random pair, pick its relay and settle the payments."""
    a, b = pick_pair(topology.node_count, rng)
    flags = [s.is_cooperator for s in node_states]
    if table is not None:
        outcome = resolve_slot(a, b, table[a][b], flags)
    else:
        d_ab = distance(topology, a, b)
        relay = select_relay(topology, eligible_cooperators(topology, a, b, flags, params), b)
        p_d = direct_power(d_ab, params)
        p_i = reduced_power(d_ab, params)
        if relay is None:
            outcome = SlotOutcome(a, b, None, p_d, 0.0, 0.0, p_d, p_i)
        else:
            p_c = relay_cost(distance(topology, relay, b), params)
            outcome = SlotOutcome(a, b, relay, p_i, p_c, p_d - p_i, p_d, p_i)
    settle_slot(outcome, node_states, params)
    return outcome


# ── Iteration ─────────────────────────────────────────────────────────────────

def run_iteration(
    topology: Topology,
    node_states: List[NodeState],
    T: int,
    params: ChannelParams,
    rng: np.random.Generator,
    table: Optional[List[List[Optional[PairChannel]]]] = None,
    iteration: int = 0,
    slot_log: Optional[List[SlotRecord]] = None,
) -> List[float]:
    """
    Run T slots and return every node's fitness change ΔF(n) for the iteration.

    Flags are frozen for the whole iteration. Fitness carries over the
    boundary unchanged; the ΔF registers shift by one.
    """
    if T < 1:
        raise InvalidConfigurationError(f"slots per iteration must be at least 1, got {T}")
    if table is None:
        table = build_pair_table(topology, params)

    node_count = len(node_states)
    flags = [s.is_cooperator for s in node_states]
    for state in node_states:
        if state.is_cooperator:
            state.coop_iterations += 1

    deltas = [0.0] * node_count
    txs, rxs = draw_pairs(node_count, T, rng)
    for t, (a, b) in enumerate(zip(txs, rxs)):
        outcome = resolve_slot(a, b, table[a][b], flags)
        tx_delta, relay_delta = settle_slot(outcome, node_states, params)
        deltas[a] += tx_delta
        if outcome.relay is not None:
            deltas[outcome.relay] += relay_delta
        if slot_log is not None:
            slot_log.append(SlotRecord(
                iteration=iteration, slot=t, tx=a, rx=b, relay=outcome.relay,
                tx_power=outcome.transmitter_power, relay_power=outcome.relay_power,
            ))

    for state, change in zip(node_states, deltas):
        state.prev_iter_fitness_change = state.iter_fitness_change
        state.iter_fitness_change = change
        state.completed_iterations += 1
    return deltas


# ── Run ───────────────────────────────────────────────────────────────────────

def run_simulation(
    config: SimConfig,
    topology: Topology,
    rng: np.random.Generator,
    mutation_rng: Optional[np.random.Generator] = None,
    topology_id: int = 0,
) -> RunResult:
    """
    Observe one topology over config.iterations iterations.

    DEF and COOP keep their flags for the whole run. TFT and WSLS start with
    all defectors; after iteration 0 one random node turns cooperator, and
    from the end of iteration 1 on every node applies the strategy, all
    decisions being taken from the same finished iteration.
    """
    if topology.node_count != config.nodes:
        raise InvalidConfigurationError(
            f"topology has {topology.node_count} nodes, config expects {config.nodes}"
        )
    if mutation_rng is None:
        mutation_rng = rng

    params = config.channel_params()
    kind = config.strategy_kind()
    variant = kind.variant
    table = build_pair_table(topology, params)

    states = [
        NodeState(is_cooperator=variant is StrategyVariant.COOP, fitness=config.initial_fitness)
        for _ in range(topology.node_count)
    ]
    slot_log: Optional[List[SlotRecord]] = [] if config.trace else None
    iteration_energy: List[float] = []
    coop_trajectory: List[int] = []

    for n in range(config.iterations):
        coop_trajectory.append(sum(1 for s in states if s.is_cooperator))
        spent_before = [s.total_energy for s in states]
        run_iteration(
            topology, states, config.slots_per_iteration, params, rng,
            table=table, iteration=n, slot_log=slot_log,
        )
        iteration_energy.append(sum(s.total_energy - e for s, e in zip(states, spent_before)))

        if not variant.is_adaptive:
            continue
        if n == 0:
            seeded = int(mutation_rng.integers(topology.node_count))
            states[seeded].is_cooperator = True
            logger.debug(f"Topology {topology_id}: node {seeded} seeded as cooperator")
        else:
            decisions = [decide(s, kind) for s in states]
            for state, flag in zip(states, decisions):
                state.is_cooperator = flag

    logger.debug(
        f"Topology {topology_id} [{variant.label}]: "
        f"{sum(iteration_energy):.6g} energy units over {config.iterations} iterations"
    )
    return RunResult(
        strategy=variant,
        topology_id=topology_id,
        iterations=config.iterations,
        total_energy=[s.total_energy for s in states],
        coop_iterations=[s.coop_iterations for s in states],
        final_states=states,
        iteration_energy=iteration_energy,
        coop_trajectory=coop_trajectory,
        slot_log=slot_log,
    )
