"""
Runtime state for a simulation run: per-node registers, per-slot outcomes
and the finished run record.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from models.schemas import StrategyVariant


class SlotRole(str, Enum):
    IDLE = "idle"
    TRANSMITTER = "transmitter"
    SELECTED_RELAY = "selected-relay"
    BYSTANDER_COOPERATOR = "bystander-cooperator"


@dataclass
class NodeState:
    """Per-node registers carried across slots and iterations."""
    is_cooperator: bool = False
    fitness: float = 0.0
    iter_fitness_change: Optional[float] = None       # ΔF(n)
    prev_iter_fitness_change: Optional[float] = None  # ΔF(n-1)
    total_energy: float = 0.0
    coop_iterations: int = 0
    completed_iterations: int = 0


@dataclass(frozen=True)
class SlotContext:
    """Indicators of the per-slot fitness change for one node."""
    has_packet: bool
    has_cooperator: bool
    connected_to_active: bool
    active_incoming: int


@dataclass(frozen=True, slots=True)
class SlotOutcome:
    transmitter: int
    receiver: int
    relay: Optional[int]
    transmitter_power: float
    relay_power: float
    benefit: float
    # P_D and P_I of the active pair, whatever the transmitter ended up paying
    pair_direct_power: float
    pair_reduced_power: float

    @property
    def total_power(self) -> float:
        return self.transmitter_power + self.relay_power


@dataclass(frozen=True)
class SlotRecord:
    """One line of the per-slot trace."""
    iteration: int
    slot: int
    tx: int
    rx: int
    relay: Optional[int]
    tx_power: float
    relay_power: float


@dataclass
class RunResult:
    strategy: StrategyVariant
    topology_id: int
    iterations: int
    total_energy: List[float]
    coop_iterations: List[int]
    final_states: List[NodeState]
    # network energy spent in each iteration
    iteration_energy: List[float] = field(default_factory=list)
    # number of cooperators during each iteration
    coop_trajectory: List[int] = field(default_factory=list)
    slot_log: Optional[List[SlotRecord]] = None

    @property
    def node_count(self) -> int:
        return len(self.total_energy)
