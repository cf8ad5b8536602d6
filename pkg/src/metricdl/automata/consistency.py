"""Consistency checking of a program and dataset with window automata."""

from __future__ import annotations

import threading
from typing import NamedTuple

from metricdl.automata.automaton import BuchiAutomaton, required_radius
from metricdl.automata.cells import CellSemantics
from metricdl.automata.discretisation import build_discretisation
from metricdl.automata.emptiness import SearchBudget, non_empty
from metricdl.automata.grounding import relevant_grounding
from metricdl.automata.window import WindowSink, mirror_window
from metricdl.logging import get_logger
from metricdl.syntax.ast import Dataset, Program
from metricdl.syntax.mirror import mirror_dataset, mirror_program, mirror_rule

__all__ = ["ConsistencyReport", "build_automata", "check_consistency"]

_logger = get_logger("automata.consistency")


class ConsistencyReport(NamedTuple):
    consistent: bool
    states: int
    windows: int
    elapsed: float


def build_automata(program: Program, dataset: Dataset) -> tuple[BuchiAutomaton, BuchiAutomaton] | None:
    """Automata reading models rightwards and leftwards; ``None`` when no constraint can fire."""
    rules, universe = relevant_grounding(program, dataset)
    if not any(rule.is_constraint for rule in rules):
        return None
    discretisation = build_discretisation(program, dataset)
    radius = required_radius(rules, CellSemantics(discretisation.shift))
    right = BuchiAutomaton(rules, universe, dataset, discretisation, radius)
    mirrored = mirror_dataset(dataset)
    left = BuchiAutomaton(
        [mirror_rule(rule) for rule in rules],
        universe,
        mirrored,
        build_discretisation(mirror_program(program), mirrored),
        radius,
    )
    return right, left


def _forced_violation(automaton: BuchiAutomaton, budget: SearchBudget) -> bool:
    """Whether what the data forces already breaks a constraint in this direction."""
    window = automaton.minimal_window()
    radius = automaton.radius
    if any(automaton.violates_constraint(window, c) for c in range(radius, automaton.length - radius)):
        return True
    return automaton.deterministic and not non_empty(automaton, window, budget)


def check_consistency(
    program: Program,
    dataset: Dataset,
    *,
    max_states: int | None = 100_000,
    max_seconds: float | None = 60.0,
    cancel: threading.Event | None = None,
    dump: WindowSink | None = None,
) -> ConsistencyReport:
    """Decide whether ``program`` and ``dataset`` have a model.

    Raises BudgetExceededError when the search outgrows its limits and
    ReasoningCancelledError once ``cancel`` is set.
    """
    budget = SearchBudget(max_states, max_seconds, cancel)
    automata = build_automata(program, dataset)
    if automata is None:
        _logger.debug("No constraint instance can fire; consistent without search")
        return ConsistencyReport(True, 0, 0, budget.elapsed())
    right, left = automata
    _logger.debug("Right automaton: %s", right.describe())
    _logger.debug("Left automaton: %s", left.describe())

    def report(consistent: bool, windows: int) -> ConsistencyReport:
        _logger.debug(
            "Automata verdict %s after %d states and %d initial windows",
            "consistent" if consistent else "inconsistent",
            budget.states,
            windows,
        )
        return ConsistencyReport(consistent, budget.states, windows, budget.elapsed())

    if _forced_violation(right, budget) or _forced_violation(left, budget):
        return report(False, 0)
    windows = 0
    for window in right.initial_windows(budget.charge):
        windows += 1
        if dump is not None:
            dump(window)
        if non_empty(right, window, budget, dump) and non_empty(left, mirror_window(window), budget, dump):
            return report(True, windows)
    return report(False, windows)
