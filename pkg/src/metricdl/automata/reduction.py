"""Reduction of fact entailment to inconsistency."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from metricdl.syntax.ast import BOTTOM, BoxMinus, BoxPlus, Dataset, Fact, Program, Relational, Rule, Variable
from metricdl.temporal import POS_INF, Interval, TimePoint, is_finite

__all__ = ["Reduction", "reduce_entailment", "reference_point"]


class Reduction(NamedTuple):
    program: Program
    dataset: Dataset
    marker: str
    point: TimePoint


def reference_point(interval: Interval) -> TimePoint:
    """A time point of ``interval`` splitting it into a past and a future part."""
    left, right = interval.left, interval.right
    if is_finite(left):
        if interval.left_closed:
            return left
        if is_finite(right):
            return Fraction(left + right) / 2
        return left + 1
    if is_finite(right):
        return right if interval.right_closed else right - 1
    return 0


def _unbounded() -> Interval:
    return Interval(0, POS_INF, True, False)


def _fresh_predicate(base: str, taken: frozenset[str]) -> str:
    name = f"{base}_query"
    suffix = 1
    while name in taken:
        suffix += 1
        name = f"{base}_query{suffix}"
    return name


def reduce_entailment(program: Program, dataset: Dataset, query: Fact) -> Reduction:
    """Program and dataset that are inconsistent iff ``program`` and ``dataset`` entail ``query``.

    A marker fact at a point t of the query interval fires a constraint
    requiring the query atom on the whole interval, split at t into a
    box-minus and a box-plus part.
    """
    interval = query.interval
    t = reference_point(interval)
    past = future = _unbounded()
    if is_finite(interval.left):
        past = Interval(0, t - interval.left, True, interval.left_closed)
    if is_finite(interval.right):
        future = Interval(0, interval.right - t, True, interval.right_closed)
    marker = _fresh_predicate(query.atom.predicate, program.predicates() | dataset.predicates())
    variables = tuple(Variable(f"X{index}") for index in range(1, query.atom.arity + 1))
    pattern = Relational(query.atom.predicate, variables)
    constraint = Rule(
        BOTTOM,
        (Relational(marker, variables), BoxMinus(past, pattern), BoxPlus(future, pattern)),
        f"r{len(program) + 1}",
    )
    marked = Fact(Relational(marker, query.atom.args), Interval.point(t))
    return Reduction(
        Program((*program.rules, constraint)),
        Dataset((*dataset.facts, marked)),
        marker,
        t,
    )

