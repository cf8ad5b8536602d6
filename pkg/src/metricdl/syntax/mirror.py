"""Reflection of programs and datasets about time point 0.

Mirroring swaps past and future operators and maps every fact interval
``<a,b>`` to ``<-b,-a>``. A dataset entails a fact under a program iff the
mirrored dataset entails the mirrored fact under the mirrored program.
"""

from __future__ import annotations

from metricdl.syntax.ast import (
    BoxMinus,
    BoxPlus,
    Dataset,
    DiamondMinus,
    DiamondPlus,
    Fact,
    MetricAtom,
    Program,
    Rule,
    Since,
    Until,
)
from metricdl.temporal import Interval

__all__ = ["mirror_atom", "mirror_dataset", "mirror_fact", "mirror_interval", "mirror_program", "mirror_rule"]


def mirror_interval(interval: Interval) -> Interval:
    return Interval(-interval.right, -interval.left, interval.right_closed, interval.left_closed)


def mirror_atom(atom: MetricAtom) -> MetricAtom:
    match atom:
        case DiamondMinus(rng, operand):
            return DiamondPlus(rng, mirror_atom(operand))
        case DiamondPlus(rng, operand):
            return DiamondMinus(rng, mirror_atom(operand))
        case BoxMinus(rng, operand):
            return BoxPlus(rng, mirror_atom(operand))
        case BoxPlus(rng, operand):
            return BoxMinus(rng, mirror_atom(operand))
        case Since(rng, left, right):
            return Until(rng, mirror_atom(left), mirror_atom(right))
        case Until(rng, left, right):
            return Since(rng, mirror_atom(left), mirror_atom(right))
        case _:
            return atom


def mirror_rule(rule: Rule) -> Rule:
    return Rule(mirror_atom(rule.head), tuple(mirror_atom(atom) for atom in rule.body), rule.name)


def mirror_program(program: Program) -> Program:
    return Program(tuple(mirror_rule(rule) for rule in program.rules))


def mirror_fact(fact: Fact) -> Fact:
    return Fact(fact.atom, mirror_interval(fact.interval))


def mirror_dataset(dataset: Dataset) -> Dataset:
    return Dataset(tuple(mirror_fact(fact) for fact in dataset.facts))
