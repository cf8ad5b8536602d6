"""Intervals over the rational timeline and the algebra the reasoner runs on.

An interval is non-empty by construction, and an infinite endpoint is always
open. Functions that may produce nothing return ``None`` instead of raising.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

import pyparsing as pp

from metricdl.errors import EmptyIntervalError, InvalidIntervalError, NotUnionCompatibleError
from metricdl.temporal.timepoint import (
    NEG_INF,
    POS_INF,
    Infinity,
    TimePoint,
    as_time_point,
    format_time_point,
    is_finite,
    parse_time_point,
)

__all__ = [
    "ALWAYS",
    "INTERVAL",
    "Interval",
    "coalesce_all",
    "coalesce_pair",
    "contains",
    "dilate_future",
    "dilate_past",
    "erode_future",
    "erode_past",
    "format_interval",
    "intersect",
    "make_interval",
    "parse_interval",
    "restrict_left",
    "restrict_right",
    "shift_minus",
    "shift_plus",
    "union_compatible",
]

StartKey = tuple[TimePoint, int]
EndKey = tuple[TimePoint, int]


@dataclass(frozen=True, slots=True)
class Interval:
    left: TimePoint
    right: TimePoint
    left_closed: bool = True
    right_closed: bool = True

    def __post_init__(self) -> None:
        left = as_time_point(self.left)
        right = as_time_point(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        if left is POS_INF or right is NEG_INF:
            raise InvalidIntervalError(f"endpoint order violated: {left}, {right}")
        if (self.left_closed and not is_finite(left)) or (self.right_closed and not is_finite(right)):
            raise InvalidIntervalError("infinite endpoints must be open")
        if not _non_empty(left, self.left_closed, right, self.right_closed):
            raise EmptyIntervalError(
                f"empty interval {_format(left, self.left_closed, right, self.right_closed)}"
            )

    @classmethod
    def point(cls, t: int | Fraction) -> Interval:
        return cls(t, t, True, True)

    @classmethod
    def closed(cls, left: int | Fraction | Infinity, right: int | Fraction | Infinity) -> Interval:
        """Closed on every finite side, open on infinite ones."""
        return cls(left, right, is_finite(as_time_point(left)), is_finite(as_time_point(right)))

    @property
    def start_key(self) -> StartKey:
        return (self.left, 0 if self.left_closed else 1)

    @property
    def end_key(self) -> EndKey:
        return (self.right, 1 if self.right_closed else 0)

    @property
    def is_punctual(self) -> bool:
        return self.left == self.right

    @property
    def is_bounded(self) -> bool:
        return is_finite(self.left) and is_finite(self.right)

    def contains_point(self, t: TimePoint) -> bool:
        if t < self.left or (t == self.left and not self.left_closed):
            return False
        return not (t > self.right or (t == self.right and not self.right_closed))

    def __str__(self) -> str:
        return _format(self.left, self.left_closed, self.right, self.right_closed)


def _non_empty(left: TimePoint, left_closed: bool, right: TimePoint, right_closed: bool) -> bool:
    if left < right:
        return True
    return left == right and left_closed and right_closed and is_finite(left)


def _format(left: TimePoint, left_closed: bool, right: TimePoint, right_closed: bool) -> str:
    return (
        f"{'[' if left_closed else '('}{format_time_point(left)},"
        f"{format_time_point(right)}{']' if right_closed else ')'}"
    )


ALWAYS = Interval(NEG_INF, POS_INF, False, False)


def make_interval(left: TimePoint, left_closed: bool, right: TimePoint, right_closed: bool) -> Interval | None:
    """Build an interval from raw bounds, opening infinite ends; ``None`` if empty."""
    left_closed = left_closed and is_finite(left)
    right_closed = right_closed and is_finite(right)
    if left is POS_INF or right is NEG_INF:
        return None
    if not _non_empty(left, left_closed, right, right_closed):
        return None
    return Interval(left, right, left_closed, right_closed)


def intersect(a: Interval, b: Interval) -> Interval | None:
    left, left_closed = (a.left, a.left_closed) if a.start_key >= b.start_key else (b.left, b.left_closed)
    right, right_closed = (a.right, a.right_closed) if a.end_key <= b.end_key else (b.right, b.right_closed)
    return make_interval(left, left_closed, right, right_closed)


def union_compatible(a: Interval, b: Interval) -> bool:
    """True iff ``a ∪ b`` is itself an interval."""
    first, second = (a, b) if a.start_key <= b.start_key else (b, a)
    if first.right < second.left:
        return False
    if first.right == second.left:
        return first.right_closed or second.left_closed
    return True


def coalesce_pair(a: Interval, b: Interval) -> Interval:
    if not union_compatible(a, b):
        raise NotUnionCompatibleError(f"{a} and {b} do not form an interval")
    first = a if a.start_key <= b.start_key else b
    last = a if a.end_key >= b.end_key else b
    return Interval(first.left, last.right, first.left_closed, last.right_closed)


def coalesce_all(intervals: Iterable[Interval]) -> list[Interval]:
    """Sort by start and merge union-compatible neighbours."""
    merged: list[Interval] = []
    for interval in sorted(intervals, key=lambda i: i.start_key):
        if merged and union_compatible(merged[-1], interval):
            merged[-1] = coalesce_pair(merged[-1], interval)
        else:
            merged.append(interval)
    return merged


def contains(outer: Interval, inner: Interval) -> bool:
    return outer.start_key <= inner.start_key and outer.end_key >= inner.end_key


def _check_shift(t: TimePoint, rng: Interval) -> None:
    if not is_finite(t):
        raise InvalidIntervalError(f"cannot shift from the infinite point {format_time_point(t)}")
    if rng.left < 0:
        raise InvalidIntervalError(f"operator range {rng} has a negative endpoint")


def _shifted(built: Interval | None, t: TimePoint, rng: Interval) -> Interval:
    if built is None:
        raise EmptyIntervalError(f"shifting {format_time_point(t)} by {rng} is empty")
    return built


def shift_minus(t: TimePoint, rng: Interval) -> Interval:
    """Points ``t'`` with ``t - t'`` in ``rng``."""
    _check_shift(t, rng)
    return _shifted(make_interval(t - rng.right, rng.right_closed, t - rng.left, rng.left_closed), t, rng)


def shift_plus(t: TimePoint, rng: Interval) -> Interval:
    """Points ``t'`` with ``t' - t`` in ``rng``."""
    _check_shift(t, rng)
    return _shifted(make_interval(t + rng.left, rng.left_closed, t + rng.right, rng.right_closed), t, rng)


def dilate_past(interval: Interval, rng: Interval) -> Interval | None:
    """Points that see some point of ``interval`` within ``rng`` in their past."""
    return make_interval(
        interval.left + rng.left,
        interval.left_closed and rng.left_closed,
        interval.right + rng.right,
        interval.right_closed and rng.right_closed,
    )


def dilate_future(interval: Interval, rng: Interval) -> Interval | None:
    """Points that see some point of ``interval`` within ``rng`` in their future."""
    return make_interval(
        interval.left - rng.right,
        interval.left_closed and rng.right_closed,
        interval.right - rng.left,
        interval.right_closed and rng.left_closed,
    )


def erode_past(interval: Interval, rng: Interval) -> Interval | None:
    """Points whose whole past window ``rng`` lies inside ``interval``."""
    if rng.right is POS_INF:
        if interval.left is not NEG_INF:
            return None
        left: TimePoint = NEG_INF
    else:
        left = interval.left + rng.right
    return make_interval(
        left,
        interval.left_closed or not rng.right_closed,
        interval.right + rng.left,
        interval.right_closed or not rng.left_closed,
    )


def erode_future(interval: Interval, rng: Interval) -> Interval | None:
    """Points whose whole future window ``rng`` lies inside ``interval``."""
    if rng.right is POS_INF:
        if interval.right is not POS_INF:
            return None
        right: TimePoint = POS_INF
    else:
        right = interval.right - rng.right
    return make_interval(
        interval.left - rng.left,
        interval.left_closed or not rng.left_closed,
        right,
        interval.right_closed or not rng.right_closed,
    )


def restrict_right(interval: Interval, t: TimePoint) -> Interval | None:
    """``interval ∩ (-inf, t]``."""
    if t is POS_INF:
        return interval
    return intersect(interval, Interval(NEG_INF, t, False, True))


def restrict_left(interval: Interval, t: TimePoint) -> Interval | None:
    """``interval ∩ [t, +inf)``."""
    if t is NEG_INF:
        return interval
    return intersect(interval, Interval(t, POS_INF, True, False))


def format_interval(interval: Interval) -> str:
    return str(interval)


def _interval_grammar() -> pp.ParserElement:
    point = pp.Regex(r"[+-]?(inf|∞|\d+(/\d+|\.\d+)?)").set_name("time point")
    point.set_parse_action(lambda tokens: parse_time_point(tokens[0]))
    expr = pp.one_of("[ (")("open") + point("left") + pp.Suppress(",") + point("right") + pp.one_of("] )")("close")
    expr.set_name("interval")

    def build(tokens: pp.ParseResults) -> Interval:
        return Interval(tokens["left"], tokens["right"], tokens["open"] == "[", tokens["close"] == "]")

    expr.set_parse_action(build)
    return expr


INTERVAL = _interval_grammar()


def parse_interval(text: str) -> Interval:
    """Parse ``[a,b]``, ``(a,b]``, ``[a,b)`` or ``(a,b)``."""
    try:
        return INTERVAL.parse_string(text, parse_all=True)[0]
    except pp.ParseException as exc:
        raise InvalidIntervalError(f"invalid interval {text!r}: {exc.msg}") from exc
