"""Grounding of rules over the constants of a program and dataset."""

from __future__ import annotations

from collections.abc import Collection, Iterator
from itertools import product

from metricdl.syntax.ast import Dataset, Program, Rule, substitute

__all__ = ["ground", "ground_rule"]


def ground_rule(rule: Rule, constants: Collection[str]) -> Iterator[Rule]:
    """Every instance of ``rule`` under assignments of ``constants`` to its variables."""
    variables = sorted(rule.variables())
    for values in product(sorted(constants), repeat=len(variables)):
        binding = dict(zip(variables, values))
        yield Rule(
            substitute(rule.head, binding),
            tuple(substitute(atom, binding) for atom in rule.body),
            rule.name,
        )


def ground(program: Program, dataset: Dataset) -> list[Rule]:
    constants = program.constants() | dataset.constants()
    return [instance for rule in program.rules for instance in ground_rule(rule, constants)]
