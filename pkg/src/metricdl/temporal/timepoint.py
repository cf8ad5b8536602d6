"""Exact time points on the rational timeline, extended with two infinities."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = [
    "NEG_INF",
    "POS_INF",
    "Infinity",
    "TimePoint",
    "as_time_point",
    "format_time_point",
    "is_finite",
    "parse_time_point",
]


class Infinity:
    """One of the two unbounded ends of the timeline.

    Only two instances exist (``NEG_INF`` and ``POS_INF``). They compare
    against ``Fraction`` and ``int`` and absorb finite addition.
    """

    __slots__ = ("sign",)

    def __init__(self, sign: int) -> None:
        self.sign = sign

    def __repr__(self) -> str:
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __str__(self) -> str:
        return "+inf" if self.sign > 0 else "-inf"

    def __reduce__(self) -> str:
        return repr(self)

    def __copy__(self) -> Infinity:
        return self

    def __deepcopy__(self, memo: dict) -> Infinity:
        return self

    def __hash__(self) -> int:
        return hash(("Infinity", self.sign))

    def __eq__(self, other: object) -> bool:
        return self is other

    def __ne__(self, other: object) -> bool:
        return self is not other

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return self.sign <= other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return self.sign > other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign > 0
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return self.sign >= other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign > 0
        return NotImplemented

    def __neg__(self) -> Infinity:
        return NEG_INF if self.sign > 0 else POS_INF

    def __add__(self, other: object) -> Infinity:
        if isinstance(other, Infinity):
            if other.sign != self.sign:
                raise ArithmeticError("undefined sum of opposite infinities")
            return self
        if isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> Infinity:
        if isinstance(other, Infinity):
            if other.sign == self.sign:
                raise ArithmeticError("undefined difference of equal infinities")
            return self
        if isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    def __rsub__(self, other: object) -> Infinity:
        if isinstance(other, (int, Fraction)):
            return -self
        return NotImplemented


NEG_INF = Infinity(-1)
POS_INF = Infinity(1)

TimePoint = Union[Fraction, Infinity]


def is_finite(point: TimePoint) -> bool:
    return not isinstance(point, Infinity)


def as_time_point(value: int | Fraction | Infinity) -> TimePoint:
    if isinstance(value, Infinity):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not time points")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"not a time point: {value!r}")


def parse_time_point(text: str) -> TimePoint:
    """Parse ``-inf``, ``+inf``/``inf``, integers, ``p/q`` fractions and decimals."""
    token = text.strip().lower()
    if token in ("-inf", "-∞"):
        return NEG_INF
    if token in ("inf", "+inf", "∞", "+∞"):
        return POS_INF
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid time point: {text!r}") from exc


def format_time_point(point: TimePoint) -> str:
    if isinstance(point, Infinity):
        return str(point)
    if point.denominator == 1:
        return str(point.numerator)
    return f"{point.numerator}/{point.denominator}"
