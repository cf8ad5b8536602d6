"""Tests for exact time points."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from metricdl.temporal import NEG_INF, POS_INF, format_time_point, parse_time_point


class TestInfinity:
    """Tests for the infinite bounds."""

    def test_order(self) -> None:
        """Negative infinity is below every fraction and positive infinity above."""
        assert NEG_INF < Fraction(-(10**9)) < POS_INF
        assert Fraction(3) > NEG_INF
        assert max(Fraction(1), POS_INF) is POS_INF
        assert min(Fraction(1), NEG_INF) is NEG_INF

    def test_not_equal_to_fractions(self) -> None:
        """Infinities never equal a finite point."""
        assert POS_INF != Fraction(0)
        assert Fraction(0) != NEG_INF

    def test_absorbs_finite_arithmetic(self) -> None:
        """Finite shifts leave infinities in place."""
        assert POS_INF + Fraction(2) is POS_INF
        assert Fraction(2) - POS_INF is NEG_INF
        assert NEG_INF - POS_INF is NEG_INF

    def test_undefined_difference(self) -> None:
        """inf - inf is rejected."""
        with pytest.raises(ArithmeticError):
            _ = POS_INF - POS_INF


class TestParseTimePoint:
    """Tests for parse_time_point and format_time_point."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("3", Fraction(3)), ("2.5", Fraction(5, 2)), ("10/4", Fraction(5, 2)), ("-inf", NEG_INF), ("+inf", POS_INF)],
    )
    def test_parse(self, text: str, expected: object) -> None:
        """Integers, decimals, unreduced fractions and infinities parse."""
        assert parse_time_point(text) == expected

    def test_invalid(self) -> None:
        """Non-numeric text is rejected."""
        with pytest.raises(ValueError):
            parse_time_point("soon")

    def test_format(self) -> None:
        """Fractions print reduced; integers print bare."""
        assert format_time_point(Fraction(10, 4)) == "5/2"
        assert format_time_point(Fraction(4)) == "4"
        assert format_time_point(NEG_INF) == "-inf"

    def test_exact_arithmetic(self) -> None:
        """Adding and subtracting fractions is exact."""
        rng = random.Random(5)
        for _ in range(200):
            a = Fraction(rng.randint(-(10**6), 10**6), rng.randint(1, 10**6))
            b = Fraction(rng.randint(-(10**6), 10**6), rng.randint(1, 10**6))
            assert (a + b) - b == a
