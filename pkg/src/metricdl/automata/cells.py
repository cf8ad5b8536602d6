"""Cell-level semantics of metric atoms over a window.

Truth is constant on every cell of a discretisation, so each operator
reduces to a condition on the labels of a fixed range of neighbouring
cells. Bounded operators are checked directly; unbounded ones read the
``Aux`` label of the nearest cell of their range, and the one-step
recurrences in ``recurrence_holds`` keep those labels honest.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator

from metricdl.automata.window import Aux, Label, Window
from metricdl.syntax.ast import (
    TOP,
    Bottom,
    BoxMinus,
    BoxPlus,
    DiamondMinus,
    DiamondPlus,
    MetricAtom,
    Relational,
    Since,
    Top,
    Until,
    subterms,
)
from metricdl.temporal import Interval, TimePoint, is_finite
from metricdl.types import AuxKind

__all__ = ["CellSemantics", "Reach", "collect_aux"]

Reach = tuple[int, int]  # cells looked at to the left and to the right


def collect_aux(atoms: Iterable[MetricAtom]) -> frozenset[Aux]:
    """Auxiliary labels needed by the unbounded operators inside ``atoms``."""
    found: set[Aux] = set()
    for atom in atoms:
        for node in subterms(atom):
            match node:
                case DiamondMinus(rng, operand) if not is_finite(rng.right):
                    found.add(Aux(AuxKind.SINCE, TOP, operand))
                case BoxMinus(rng, operand) if not is_finite(rng.right):
                    found.add(Aux(AuxKind.HISTORICALLY, operand))
                case Since(rng, left, right) if not is_finite(rng.right):
                    found.add(Aux(AuxKind.SINCE, left, right))
                case DiamondPlus(rng, operand) if not is_finite(rng.right):
                    found.add(Aux(AuxKind.UNTIL, TOP, operand))
                case BoxPlus(rng, operand) if not is_finite(rng.right):
                    found.add(Aux(AuxKind.HENCEFORTH, operand))
                case Until(rng, left, right) if not is_finite(rng.right):
                    found.add(Aux(AuxKind.UNTIL, left, right))
    return frozenset(found)


class CellSemantics:
    def __init__(self, shift: Callable[[TimePoint], int]) -> None:
        self._shift = shift
        self._reach: dict[MetricAtom | Aux, Reach] = {}

    def past_cells(self, j: int, punctual: bool, rng: Interval) -> tuple[int | None, int]:
        """Cells meeting ``x - rng`` for the points x of cell ``j``; ``None`` when unbounded."""
        high = j - self._shift(rng.left) - (0 if rng.left_closed or not punctual else 1)
        if not is_finite(rng.right):
            return None, high
        low = j - self._shift(rng.right) + (0 if rng.right_closed or not punctual else 1)
        return low, high

    def future_cells(self, j: int, punctual: bool, rng: Interval) -> tuple[int, int | None]:
        low = j + self._shift(rng.left) + (0 if rng.left_closed or not punctual else 1)
        if not is_finite(rng.right):
            return low, None
        high = j + self._shift(rng.right) - (0 if rng.right_closed or not punctual else 1)
        return low, high

    def holds(self, window: Window, atom: MetricAtom, j: int) -> bool:
        match atom:
            case Top():
                return True
            case Bottom():
                return False
            case Relational():
                return atom in window.label(j)
            case DiamondMinus(rng, operand):
                low, high = self.past_cells(j, window.punctual(j), rng)
                if low is None:
                    return Aux(AuxKind.SINCE, TOP, operand) in window.label(high)
                return any(self.holds(window, operand, i) for i in range(low, high + 1))
            case BoxMinus(rng, operand):
                low, high = self.past_cells(j, window.punctual(j), rng)
                if low is None:
                    return Aux(AuxKind.HISTORICALLY, operand) in window.label(high)
                return all(self.holds(window, operand, i) for i in range(low, high + 1))
            case DiamondPlus(rng, operand):
                low, high = self.future_cells(j, window.punctual(j), rng)
                if high is None:
                    return Aux(AuxKind.UNTIL, TOP, operand) in window.label(low)
                return any(self.holds(window, operand, i) for i in range(low, high + 1))
            case BoxPlus(rng, operand):
                low, high = self.future_cells(j, window.punctual(j), rng)
                if high is None:
                    return Aux(AuxKind.HENCEFORTH, operand) in window.label(low)
                return all(self.holds(window, operand, i) for i in range(low, high + 1))
            case Since(rng, left, right):
                return self._since(window, rng, left, right, j)
            case Until(rng, left, right):
                return self._until(window, rng, left, right, j)
        raise TypeError(f"not a metric atom: {atom!r}")

    def guarantee(self, window: Window, left: MetricAtom, right: MetricAtom, i: int) -> bool:
        """Whether cell ``i`` can witness a since/until whose path leaves it."""
        return self.holds(window, right, i) and (window.punctual(i) or self.holds(window, left, i))

    def _same_cell(self, window: Window, rng: Interval, left: MetricAtom, right: MetricAtom, j: int) -> bool:
        punctual = window.punctual(j)
        return self.holds(window, right, j) and (punctual or rng.contains_point(0) or self.holds(window, left, j))

    def _since(self, window: Window, rng: Interval, left: MetricAtom, right: MetricAtom, j: int) -> bool:
        punctual = window.punctual(j)
        low, high = self.past_cells(j, punctual, rng)
        if high == j and self._same_cell(window, rng, left, right, j):
            return True
        last = min(high, j - 1)
        if not punctual and not self.holds(window, left, j):
            return False
        if not all(self.holds(window, left, m) for m in range(last + 1, j)):
            return False
        if low is None:
            return Aux(AuxKind.SINCE, left, right) in window.label(last)
        for i in range(last, low - 1, -1):
            if self.guarantee(window, left, right, i):
                return True
            if not self.holds(window, left, i):
                return False
        return False

    def _until(self, window: Window, rng: Interval, left: MetricAtom, right: MetricAtom, j: int) -> bool:
        punctual = window.punctual(j)
        low, high = self.future_cells(j, punctual, rng)
        if low == j and self._same_cell(window, rng, left, right, j):
            return True
        first = max(low, j + 1)
        if not punctual and not self.holds(window, left, j):
            return False
        if not all(self.holds(window, left, m) for m in range(j + 1, first)):
            return False
        if high is None:
            return Aux(AuxKind.UNTIL, left, right) in window.label(first)
        for i in range(first, high + 1):
            if self.guarantee(window, left, right, i):
                return True
            if not self.holds(window, left, i):
                return False
        return False

    def recurrence_holds(self, window: Window, aux: Aux, c: int) -> bool:
        """The one-step unfolding of ``aux`` at cell ``c``."""
        present = aux in window.label(c)
        match aux.kind:
            case AuxKind.SINCE:
                expected = self.guarantee(window, aux.left, aux.right, c) or (
                    aux in window.label(c - 1) and self.holds(window, aux.left, c)
                )
            case AuxKind.HISTORICALLY:
                expected = self.holds(window, aux.left, c) and aux in window.label(c - 1)
            case AuxKind.UNTIL:
                expected = self.guarantee(window, aux.left, aux.right, c) or (
                    aux in window.label(c + 1) and self.holds(window, aux.left, c)
                )
            case AuxKind.HENCEFORTH:
                expected = self.holds(window, aux.left, c) and aux in window.label(c + 1)
        return present == expected

    def discharged(self, window: Window, aux: Aux, c: int) -> bool:
        """No eventuality of a future ``aux`` is left pending at cell ``c``."""
        if aux.kind is AuxKind.UNTIL:
            return aux not in window.label(c) or self.guarantee(window, aux.left, aux.right, c)
        return aux in window.label(c) or not self.holds(window, aux.left, c)

    def targets(self, window: Window, atom: MetricAtom, j: int) -> Iterator[tuple[int, Label]]:
        """Labels that must be present, and where, for a rule head ``atom`` to hold at ``j``.

        Positions may fall outside the window.
        """
        match atom:
            case Relational():
                yield j, atom
            case BoxPlus(rng, operand):
                low, high = self.future_cells(j, window.punctual(j), rng)
                if high is None:
                    yield low, Aux(AuxKind.HENCEFORTH, operand)
                    return
                for i in range(low, high + 1):
                    yield from self.targets(window, operand, i)
            case BoxMinus(rng, operand):
                low, high = self.past_cells(j, window.punctual(j), rng)
                if low is None:
                    yield high, Aux(AuxKind.HISTORICALLY, operand)
                    return
                for i in range(low, high + 1):
                    yield from self.targets(window, operand, i)

    def reach(self, item: MetricAtom | Aux) -> Reach:
        cached = self._reach.get(item)
        if cached is None:
            cached = self._reach[item] = self._compute_reach(item)
        return cached

    def _compute_reach(self, item: MetricAtom | Aux) -> Reach:
        shift = self._shift
        if isinstance(item, Aux):
            left_l, left_r = self.reach(item.left)
            right_l, right_r = self.reach(item.right)
            if item.kind in (AuxKind.SINCE, AuxKind.HISTORICALLY):
                return max(1, left_l, right_l), max(left_r, right_r)
            return max(left_l, right_l), max(1, left_r, right_r)
        match item:
            case DiamondMinus(rng, operand) | BoxMinus(rng, operand):
                if not is_finite(rng.right):
                    return shift(rng.left) + 1, 0
                inner_l, inner_r = self.reach(operand)
                return shift(rng.right) + inner_l, inner_r
            case DiamondPlus(rng, operand) | BoxPlus(rng, operand):
                if not is_finite(rng.right):
                    return 0, shift(rng.left) + 1
                inner_l, inner_r = self.reach(operand)
                return inner_l, shift(rng.right) + inner_r
            case Since(rng, left, right):
                left_l, left_r = self.reach(left)
                right_l, right_r = self.reach(right)
                if not is_finite(rng.right):
                    start = shift(rng.left)
                    return max(start + 1, start + left_l, right_l), max(left_r, right_r)
                return shift(rng.right) + max(left_l, right_l), max(left_r, right_r)
            case Until(rng, left, right):
                left_l, left_r = self.reach(left)
                right_l, right_r = self.reach(right)
                if not is_finite(rng.right):
                    start = shift(rng.left)
                    return max(left_l, right_l), max(start + 1, start + left_r, right_r)
                return max(left_l, right_l), shift(rng.right) + max(left_r, right_r)
        return 0, 0
