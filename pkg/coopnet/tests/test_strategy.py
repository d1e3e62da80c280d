"""
Unit tests for the improvement signal and the four behavioral rules
"""
import itertools

import pytest

from models.schemas import ImprovementMode, StrategyKind, StrategyVariant
from models.state import NodeState
from simulation.errors import NotReadyError
from simulation.strategy import apply_rule, decide, improved


def _kind(variant, mode=ImprovementMode.DIFFERENTIAL, tie=False):
    return StrategyKind(variant=variant, improvement_mode=mode, tie_is_improvement=tie)


def _state(current, previous=None, cooperator=False):
    return NodeState(
        is_cooperator=cooperator,
        iter_fitness_change=current,
        prev_iter_fitness_change=previous,
    )


def test_differential_strict_increase():
    assert improved(_state(-0.1, -0.4), _kind(StrategyVariant.TFT)) is True
    assert improved(_state(-0.4, -0.1), _kind(StrategyVariant.TFT)) is False


def test_literal_never_positive():
    kind = _kind(StrategyVariant.TFT, ImprovementMode.LITERAL)
    assert improved(_state(-0.1), kind) is False
    assert improved(_state(0.25), kind) is True


def test_tie_policy():
    assert improved(_state(-0.2, -0.2), _kind(StrategyVariant.WSLS, tie=False)) is False
    assert improved(_state(-0.2, -0.2), _kind(StrategyVariant.WSLS, tie=True)) is True
    literal = ImprovementMode.LITERAL
    assert improved(_state(0.0), _kind(StrategyVariant.WSLS, literal, tie=False)) is False
    assert improved(_state(0.0), _kind(StrategyVariant.WSLS, literal, tie=True)) is True


def test_not_ready_without_history():
    with pytest.raises(NotReadyError):
        improved(_state(-0.3, None), _kind(StrategyVariant.TFT))
    with pytest.raises(NotReadyError):
        improved(_state(None, None), _kind(StrategyVariant.TFT, ImprovementMode.LITERAL))
    with pytest.raises(NotReadyError) as exc:
        decide(_state(None), _kind(StrategyVariant.WSLS))
    assert exc.value.code == "NOT_READY"


def test_decide_cases():
    wsls = _kind(StrategyVariant.WSLS)
    assert decide(_state(-0.5, -0.1, cooperator=True), wsls) is False

    tft = _kind(StrategyVariant.TFT)
    assert decide(_state(-0.1, -0.5, cooperator=False), tft) is True

    assert decide(_state(None), _kind(StrategyVariant.DEF)) is False
    assert decide(_state(None, cooperator=False), _kind(StrategyVariant.COOP)) is True


@pytest.mark.parametrize(
    "variant,is_cooperator,did_improve",
    list(itertools.product(StrategyVariant, [False, True], [False, True])),
)
def test_rule_truth_table(variant, is_cooperator, did_improve):
    """All 16 (variant, flag, improved) combinations"""
    expected = {
        StrategyVariant.DEF: False,
        StrategyVariant.COOP: True,
        StrategyVariant.TFT: did_improve,
        StrategyVariant.WSLS: is_cooperator if did_improve else not is_cooperator,
    }[variant]
    assert apply_rule(variant, is_cooperator, did_improve) is expected


def test_decision_invariant_under_common_scaling():
    """Scaling every fitness change by a positive constant leaves decisions alone"""
    cases = [(-0.3, -0.7), (-0.7, -0.3), (-0.2, -0.2), (0.0, -1.0)]
    for variant in StrategyVariant:
        for mode in ImprovementMode:
            kind = _kind(variant, mode)
            for flag in (False, True):
                for current, previous in cases:
                    base = decide(_state(current, previous, flag), kind)
                    scaled = decide(_state(current * 8.0, previous * 8.0, flag), kind)
                    assert base == scaled


def test_parse_strategy_tokens():
    assert StrategyVariant.parse("TFT") is StrategyVariant.TFT
    assert StrategyVariant.parse("wsls") is StrategyVariant.WSLS
    assert StrategyVariant.parse(" Coop ") is StrategyVariant.COOP
    with pytest.raises(ValueError):
        StrategyVariant.parse("grim")
