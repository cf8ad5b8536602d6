"""Partition of the rational timeline into punctual and open cells.

Grid points are ``t + i*d`` for every data anchor ``t`` and integer ``i``,
where ``d`` is the gcd of the numbers occurring in the program. Cell ``2m``
is the punctual interval at the m-th grid point and cell ``2m + 1`` the open
interval between grid points ``m`` and ``m + 1``. Shifting by any program
range endpoint maps cells onto cells, which is what lets the automata work
on cell indices alone.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from metricdl.syntax.ast import BINARY_TYPES, UNARY_TYPES, Dataset, Program, subterms
from metricdl.temporal import Interval, TimePoint, is_finite

__all__ = ["Discretisation", "build_discretisation", "fraction_gcd", "program_numbers"]


def fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """Largest rational dividing every value; 1 for no values."""
    numbers = [Fraction(value) for value in values if value != 0]
    if not numbers:
        return Fraction(1)
    denominator = math.lcm(*(number.denominator for number in numbers))
    numerator = math.gcd(*(int(number * denominator) for number in numbers))
    return Fraction(numerator, denominator)


def program_numbers(program: Program) -> set[Fraction]:
    """Finite non-zero endpoints of every operator range in ``program``."""
    numbers: set[Fraction] = set()
    for rule in program:
        for atom in (rule.head, *rule.body):
            for node in subterms(atom):
                if isinstance(node, (*UNARY_TYPES, *BINARY_TYPES)):
                    for endpoint in (node.range.left, node.range.right):
                        if is_finite(endpoint) and endpoint != 0:
                            numbers.add(Fraction(endpoint))
    return numbers


@dataclass(frozen=True, slots=True)
class Discretisation:
    gcd: Fraction
    anchors: tuple[Fraction, ...]
    residues: tuple[Fraction, ...]

    @classmethod
    def of(cls, gcd: Fraction, anchors: Iterable[Fraction]) -> Discretisation:
        ordered = tuple(sorted(set(anchors))) or (Fraction(0),)
        return cls(gcd, ordered, tuple(sorted({anchor % gcd for anchor in ordered})))

    @property
    def period(self) -> int:
        """Cells per ``gcd`` of time."""
        return 2 * len(self.residues)

    def shift(self, distance: TimePoint) -> int:
        """Cell offset of a distance that is a multiple of ``gcd``."""
        steps = Fraction(distance) / self.gcd
        if steps.denominator != 1:
            raise ValueError(f"distance {distance} is not a multiple of {self.gcd}")
        return int(steps) * self.period

    def point(self, m: int) -> Fraction:
        quotient, remainder = divmod(m, len(self.residues))
        return quotient * self.gcd + self.residues[remainder]

    def index(self, t: TimePoint) -> int:
        """Cell index of the grid point ``t``."""
        quotient, remainder = divmod(Fraction(t), self.gcd)
        try:
            position = self.residues.index(remainder)
        except ValueError:
            raise ValueError(f"{t} is not a grid point") from None
        return 2 * (int(quotient) * len(self.residues) + position)

    def cell(self, n: int) -> Interval:
        m, odd = divmod(n, 2)
        if not odd:
            return Interval.point(self.point(m))
        return Interval(self.point(m), self.point(m + 1), False, False)

    def cells(self, start: int, stop: int) -> list[Interval]:
        return [self.cell(n) for n in range(start, stop)]

    def span(self, interval: Interval) -> tuple[int | None, int | None]:
        """First and last cell covered by ``interval``; ``None`` for an infinite side."""
        low = None
        if is_finite(interval.left):
            low = self.index(interval.left) + (0 if interval.left_closed else 1)
        high = None
        if is_finite(interval.right):
            high = self.index(interval.right) - (0 if interval.right_closed else 1)
        return low, high


def build_discretisation(program: Program, dataset: Dataset) -> Discretisation:
    anchors = {
        Fraction(endpoint)
        for fact in dataset
        for endpoint in (fact.interval.left, fact.interval.right)
        if is_finite(endpoint)
    }
    return Discretisation.of(fraction_gcd(program_numbers(program)), anchors)
