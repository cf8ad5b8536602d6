"""Classification of rules by the direction they move facts in time."""

from __future__ import annotations

from metricdl.syntax.ast import (
    Bottom,
    BoxMinus,
    BoxPlus,
    DiamondMinus,
    DiamondPlus,
    MetricAtom,
    Program,
    Rule,
    Since,
    Top,
    Until,
    subterms,
)
from metricdl.types import PropagationClass

__all__ = ["is_backward_propagating", "is_forward_propagating", "propagation_class"]

_PAST = (DiamondMinus, BoxMinus, Since)
_FUTURE = (DiamondPlus, BoxPlus, Until)


def _mentions_constant_truth(rule: Rule) -> bool:
    return any(isinstance(node, (Top, Bottom)) for atom in (rule.head, *rule.body) for node in subterms(atom))


def _free_of(atoms: tuple[MetricAtom, ...], forbidden: tuple[type, ...]) -> bool:
    return not any(isinstance(node, forbidden) for atom in atoms for node in subterms(atom))


def is_forward_propagating(rule: Rule) -> bool:
    """Past operators in the body, future boxes in the head; plain atoms fit both."""
    if _mentions_constant_truth(rule):
        return False
    return _free_of(rule.body, _FUTURE) and _free_of((rule.head,), (BoxMinus,))


def is_backward_propagating(rule: Rule) -> bool:
    if _mentions_constant_truth(rule):
        return False
    return _free_of(rule.body, _PAST) and _free_of((rule.head,), (BoxPlus,))


def propagation_class(program: Program) -> PropagationClass:
    if all(is_forward_propagating(rule) for rule in program.rules):
        return PropagationClass.FORWARD
    if all(is_backward_propagating(rule) for rule in program.rules):
        return PropagationClass.BACKWARD
    return PropagationClass.MIXED
