"""Büchi emptiness by nested depth-first search over the degeneralised product."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from metricdl.automata.automaton import BuchiAutomaton
from metricdl.automata.window import Window, WindowSink
from metricdl.errors import BudgetExceededError, ReasoningCancelledError
from metricdl.logging import get_logger

__all__ = ["SearchBudget", "non_empty"]

_logger = get_logger("automata.emptiness")

State = tuple[Window, int]


@dataclass(slots=True)
class SearchBudget:
    """Limits shared by every search of one consistency check."""

    max_states: int | None = 100_000
    max_seconds: float | None = 60.0
    cancel: threading.Event | None = None
    states: int = 0
    started: float = field(default_factory=time.perf_counter)

    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def charge(self) -> None:
        if self.cancel is not None and self.cancel.is_set():
            raise ReasoningCancelledError(f"automata search cancelled after {self.states} states")
        self.states += 1
        if self.max_states is not None and self.states > self.max_states:
            raise BudgetExceededError(f"automata search exceeded {self.max_states} states")
        if self.max_seconds is not None and self.elapsed() > self.max_seconds:
            raise BudgetExceededError(f"automata search exceeded {self.max_seconds} seconds")


class _Product:
    def __init__(self, automaton: BuchiAutomaton, budget: SearchBudget, sink: WindowSink | None) -> None:
        self.automaton = automaton
        self.budget = budget
        self.sink = sink
        self.count = len(automaton.families)
        self._successors: dict[State, list[State]] = {}

    def successors(self, state: State) -> list[State]:
        cached = self._successors.get(state)
        if cached is not None:
            return cached
        window, counter = state
        self.budget.charge()
        if self.sink is not None:
            self.sink(window)
        if self.count and self.automaton.family_holds(window, counter):
            counter = (counter + 1) % self.count
        cached = self._successors[state] = [(target, counter) for target in self.automaton.successors(window)]
        return cached

    def accepting(self, state: State) -> bool:
        window, counter = state
        return not self.count or (counter == 0 and self.automaton.family_holds(window, 0))


def non_empty(
    automaton: BuchiAutomaton,
    initial: Window,
    budget: SearchBudget,
    sink: WindowSink | None = None,
) -> bool:
    """Whether some infinite run from ``initial`` visits every acceptance family infinitely often."""
    product = _Product(automaton, budget, sink)
    start: State = (initial, 0)
    blue: set[State] = {start}
    red: set[State] = set()
    on_stack: set[State] = {start}
    stack = [(start, iter(product.successors(start)))]
    while stack:
        state, pending = stack[-1]
        target = next(pending, None)
        if target is not None:
            if target in on_stack and (product.accepting(state) or product.accepting(target)):
                _logger.debug("Accepting cycle closed on the search stack after %d states", len(blue))
                return True
            if target not in blue:
                blue.add(target)
                on_stack.add(target)
                stack.append((target, iter(product.successors(target))))
            continue
        stack.pop()
        on_stack.discard(state)
        if product.accepting(state) and _cycle_through(product, state, red):
            _logger.debug("Accepting cycle found after %d states", len(blue))
            return True
    _logger.debug("No accepting cycle among %d states", len(blue))
    return False


def _cycle_through(product: _Product, seed: State, red: set[State]) -> bool:
    stack = [iter(product.successors(seed))]
    while stack:
        target = next(stack[-1], None)
        if target is None:
            stack.pop()
            continue
        if target == seed:
            return True
        if target not in red:
            red.add(target)
            stack.append(iter(product.successors(target)))
    return False
