"""Window automata reading a ground program's models one cell at a time.

States are windows of a fixed number of cells. A transition drops the
leftmost cell and appends a new one whose label is guessed for atoms that
cannot be computed from the past and closed under the forward rules for
everything else. Rules and auxiliary recurrences are checked at the cell
that has a full radius of context on both sides.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from itertools import chain, combinations

from metricdl.automata.cells import CellSemantics, collect_aux
from metricdl.automata.discretisation import Discretisation
from metricdl.automata.window import Aux, CellLabel, Label, Window, format_label, sorted_labels
from metricdl.syntax.ast import BoxMinus, Dataset, MetricAtom, Relational, Rule, subterms
from metricdl.temporal import POS_INF
from metricdl.types import AuxKind

__all__ = ["BuchiAutomaton", "required_radius"]

_PAST = (AuxKind.SINCE, AuxKind.HISTORICALLY)


def _rule_atoms(rules: Sequence[Rule]) -> Iterator[MetricAtom]:
    for rule in rules:
        yield rule.head
        yield from rule.body


def required_radius(rules: Sequence[Rule], semantics: CellSemantics) -> int:
    """Cells of context needed on each side to check every rule and recurrence."""
    items: list[MetricAtom | Aux] = [*_rule_atoms(rules), *collect_aux(_rule_atoms(rules))]
    return max((max(semantics.reach(item)) for item in items), default=0) or 1


def _subsets(labels: Sequence[Label]) -> Iterator[tuple[Label, ...]]:
    ordered = sorted_labels(labels)
    return chain.from_iterable(combinations(ordered, size) for size in range(len(ordered) + 1))


class BuchiAutomaton:
    """Automaton over windows of ``2 * radius + span`` cells for one reading direction."""

    def __init__(
        self,
        rules: Sequence[Rule],
        universe: frozenset[Relational],
        dataset: Dataset,
        discretisation: Discretisation,
        radius: int,
    ) -> None:
        self.rules = tuple(rules)
        self.universe = universe
        self.dataset = dataset
        self.discretisation = discretisation
        self.radius = radius
        self.semantics = CellSemantics(discretisation.shift)
        self.aux = collect_aux(_rule_atoms(self.rules))
        self.persistent = frozenset(fact.atom for fact in dataset if fact.interval.right == POS_INF)
        self.forward = tuple(rule for rule in self.rules if self._is_forward(rule))
        self.families = tuple(sorted_labels(aux for aux in self.aux if aux.kind not in _PAST))
        self.guessable = self._guessable()
        self._fire_from = {
            id(rule): max((self.semantics.reach(atom)[0] for atom in rule.body), default=0) for rule in self.forward
        }
        self._head_right = {id(rule): self.semantics.reach(rule.head)[1] for rule in self.forward}
        self._past_aux = tuple(
            aux for aux in sorted_labels(self.aux) if aux.kind in _PAST and aux not in set(self.guessable)
        )
        low, high = self._data_span()
        self.start = low - radius
        self.length = high - low + 1 + 2 * radius

    def _is_forward(self, rule: Rule) -> bool:
        if rule.is_constraint:
            return False
        if any(self.semantics.reach(atom)[1] > 0 for atom in rule.body):
            return False
        return not any(isinstance(node, BoxMinus) for node in subterms(rule.head))

    def _guessable(self) -> tuple[Label, ...]:
        forward = {id(rule) for rule in self.forward}
        guessed_predicates = {
            rule.head_predicate for rule in self.rules if not rule.is_constraint and id(rule) not in forward
        }
        atoms: list[Label] = [atom for atom in self.universe if atom.predicate in guessed_predicates]
        for aux in self.aux:
            if aux.kind not in _PAST:
                atoms.append(aux)
            elif max(self.semantics.reach(aux.left)[1], self.semantics.reach(aux.right)[1]) > 0:
                atoms.append(aux)
        return tuple(sorted_labels(atoms))

    def _data_span(self) -> tuple[int, int]:
        ends = [
            end
            for fact in self.dataset
            for end in self.discretisation.span(fact.interval)
            if end is not None
        ]
        return min(ends, default=0), max(ends, default=0)

    @property
    def deterministic(self) -> bool:
        return not self.guessable and not self.families

    @property
    def check_cell(self) -> int:
        return self.length - 1 - self.radius

    def close(self, base: tuple[CellLabel, ...], first_punctual: bool, seed: frozenset[Label]) -> CellLabel:
        """Least label for the cell after ``base`` containing ``seed`` and closed under forward rules."""
        n = len(base)
        cell: set[Label] = set(seed)
        semantics = self.semantics
        changed = True
        while changed:
            changed = False
            window = Window((*base, frozenset(cell)), first_punctual)
            required: list[Label] = []
            for rule in self.forward:
                start = max(n - self._head_right[id(rule)], self._fire_from[id(rule)])
                for c in range(start, n + 1):
                    if all(semantics.holds(window, atom, c) for atom in rule.body):
                        required.extend(label for pos, label in semantics.targets(window, rule.head, c) if pos == n)
            if n > 0:
                for aux in self._past_aux:
                    if n >= max(semantics.reach(aux.left)[0], semantics.reach(aux.right)[0]) and self._unfolds(
                        window, aux, n
                    ):
                        required.append(aux)
                required.extend(
                    aux for aux in window.label(n - 1) if isinstance(aux, Aux) and aux.kind is AuxKind.HENCEFORTH
                )
            for label in window.label(n):
                if isinstance(label, Aux) and label.kind in (AuxKind.HENCEFORTH, AuxKind.HISTORICALLY):
                    required.extend(item for pos, item in semantics.targets(window, label.left, n) if pos == n)
            for label in required:
                if label not in cell:
                    cell.add(label)
                    changed = True
        return frozenset(cell)

    def _unfolds(self, window: Window, aux: Aux, c: int) -> bool:
        semantics = self.semantics
        if aux.kind is AuxKind.SINCE:
            return semantics.guarantee(window, aux.left, aux.right, c) or (
                aux in window.label(c - 1) and semantics.holds(window, aux.left, c)
            )
        return aux in window.label(c - 1) and semantics.holds(window, aux.left, c)

    def consistent_at(self, window: Window, c: int) -> bool:
        """Every rule instance and auxiliary recurrence is satisfied at cell ``c``."""
        semantics = self.semantics
        for rule in self.rules:
            fires = all(semantics.holds(window, atom, c) for atom in rule.body)
            if fires and not semantics.holds(window, rule.head, c):
                return False
        return all(semantics.recurrence_holds(window, aux, c) for aux in self.aux)

    def violates_constraint(self, window: Window, c: int) -> bool:
        return any(
            rule.is_constraint and all(self.semantics.holds(window, atom, c) for atom in rule.body)
            for rule in self.rules
        )

    def family_holds(self, window: Window, index: int) -> bool:
        return self.semantics.discharged(window, self.families[index], self.check_cell)

    def successors(self, window: Window) -> list[Window]:
        base = window.labels[1:]
        first_punctual = not window.first_punctual
        seen: set[CellLabel] = set()
        result = []
        for guess in _subsets(self.guessable):
            label = self.close(base, first_punctual, self.persistent | frozenset(guess))
            if label in seen:
                continue
            seen.add(label)
            candidate = Window((*base, label), first_punctual)
            if self.consistent_at(candidate, self.check_cell):
                result.append(candidate)
        return result

    def _data_at(self, absolute: int) -> frozenset[Label]:
        atoms = set()
        for fact in self.dataset:
            low, high = self.discretisation.span(fact.interval)
            if (low is None or low <= absolute) and (high is None or absolute <= high):
                atoms.add(fact.atom)
        return frozenset(atoms)

    @property
    def free_cells(self) -> int:
        """Leading cells whose labels may depend on what lies left of the window."""
        return self.radius + max(self._head_right.values(), default=0)

    def initial_windows(self, charge: Callable[[], None] = lambda: None) -> Iterator[Window]:
        """Windows over the data span that satisfy every check they can see, fewest guesses first."""
        everything = sorted_labels([*self.universe, *self.aux])
        first_punctual = self.start % 2 == 0

        def extend(base: tuple[CellLabel, ...]) -> Iterator[Window]:
            p = len(base)
            if p == self.length:
                yield Window(base, first_punctual)
                return
            seed = self._data_at(self.start + p)
            guesses = everything if p < self.free_cells else self.guessable
            seen: set[CellLabel] = set()
            for guess in _subsets(guesses):
                charge()
                label = self.close(base, first_punctual, seed | frozenset(guess))
                if label in seen:
                    continue
                seen.add(label)
                window = Window((*base, label), first_punctual)
                if p >= 2 * self.radius and not self.consistent_at(window, p - self.radius):
                    continue
                yield from extend(window.labels)

        return extend(())

    def minimal_window(self) -> Window:
        """The window holding only what the data forces, with nothing guessed or checked."""
        first_punctual = self.start % 2 == 0
        base: tuple[CellLabel, ...] = ()
        for p in range(self.length):
            base = (*base, self.close(base, first_punctual, self._data_at(self.start + p)))
        return Window(base, first_punctual)

    def describe(self) -> str:
        guessed = ", ".join(format_label(label) for label in self.guessable) or "-"
        return (
            f"radius={self.radius} length={self.length} rules={len(self.rules)} "
            f"forward={len(self.forward)} families={len(self.families)} guessable=[{guessed}]"
        )
