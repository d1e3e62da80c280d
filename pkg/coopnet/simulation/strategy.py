"""
Behavioral rules mapping a node's iteration-fitness history to its
cooperator flag for the next iteration.
"""

from models.schemas import ImprovementMode, StrategyKind, StrategyVariant
from models.state import NodeState
from simulation.errors import NotReadyError


def improved(state: NodeState, kind: StrategyKind) -> bool:
    """
    Whether the node saw its fitness improve over the last iteration.

    literal:      ΔF(n) > 0
    differential: ΔF(n) > ΔF(n-1)
    A tie counts as an improvement only when kind.tie_is_improvement is set.
    """
    current = state.iter_fitness_change
    if kind.improvement_mode is ImprovementMode.LITERAL:
        if current is None:
            raise NotReadyError("no completed iteration yet")
        reference = 0.0
    else:
        previous = state.prev_iter_fitness_change
        if current is None or previous is None:
            raise NotReadyError("differential mode needs two completed iterations")
        reference = previous

    if current == reference:
        return kind.tie_is_improvement
    return current > reference


def apply_rule(variant: StrategyVariant, is_cooperator: bool, did_improve: bool) -> bool:
    """Next cooperator flag from the current flag and the improvement signal."""
    if variant is StrategyVariant.DEF:
        return False
    if variant is StrategyVariant.COOP:
        return True
    if variant is StrategyVariant.WSLS:
        # win-stay, lose-shift
        return is_cooperator if did_improve else not is_cooperator
    # TFT: cooperate after an improvement, defect otherwise
    return did_improve


def decide(state: NodeState, kind: StrategyKind) -> bool:
    if not kind.variant.is_adaptive:
        return apply_rule(kind.variant, state.is_cooperator, False)
    return apply_rule(kind.variant, state.is_cooperator, improved(state, kind))
