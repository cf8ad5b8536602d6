"""Tests for program and dataset parsing."""

from __future__ import annotations

from fractions import Fraction

import pytest

from metricdl.errors import ParseError
from metricdl.syntax import (
    ArityTable,
    BoxMinus,
    BoxPlus,
    Constant,
    DiamondMinus,
    Fact,
    Relational,
    Rule,
    Since,
    Top,
    Until,
    Variable,
    parse_dataset,
    parse_fact,
    parse_metric_atom,
    parse_program,
    parse_rule,
)
from metricdl.temporal import Interval, parse_interval
from tests.helpers.running_example import PROGRAM_TEXT


def rel(predicate: str, *args: str) -> Relational:
    return Relational(predicate, tuple(Variable(a) if a[0].isupper() else Constant(a) for a in args))


class TestParseProgram:
    """Tests for parse_program."""

    def test_running_example_rule(self) -> None:
        """A diamond-minus body over a relational atom."""
        rule = parse_rule("R4(X) <- DIAMONDMINUS[0,1] R5(X)")
        assert rule == Rule(rel("R4", "X"), (DiamondMinus(parse_interval("[0,1]"), rel("R5", "X")),))

    def test_rules_named_by_position(self) -> None:
        """Rules are named r1..rn, skipping comments and blank lines."""
        program = parse_program(PROGRAM_TEXT)
        assert [rule.name for rule in program.rules] == ["r1", "r2", "r3", "r4"]

    def test_box_head(self) -> None:
        """A future box head wraps the relational head atom."""
        rule = parse_program(PROGRAM_TEXT).rule("r2")
        assert rule.head == BoxPlus(parse_interval("[1,1]"), rel("R5", "Y"))
        assert rule.body[1] == BoxPlus(parse_interval("[1,2]"), rel("R3", "Y", "Z"))

    def test_label(self) -> None:
        """A leading label names the rule."""
        program = parse_program("grow: P(X) <- DIAMONDMINUS[1,1] P(X)\n")
        assert program.rules[0].name == "grow"

    def test_labelled_box_head(self) -> None:
        """A labelled rule keeps a plain string name and an unwrapped head."""
        (rule,) = parse_program("keep: BOXPLUS[1,1] P(X) <- Q(X)\n").rules
        assert rule.name == "keep"
        assert type(rule.name) is str
        assert rule.head == BoxPlus(parse_interval("[1,1]"), rel("P", "X"))
        assert rule.body == (rel("Q", "X"),)

    def test_empty_input(self) -> None:
        """No rules parse to the empty program."""
        assert len(parse_program("")) == 0
        assert len(parse_program("# only a comment\n\n")) == 0

    def test_nested_operators_and_since(self) -> None:
        """Unary operators bind tighter than SINCE."""
        atom = parse_metric_atom("BOXMINUS[0,1] P(X) SINCE(0,2] Q(X)")
        assert atom == Since(
            Interval(0, 2, False, True),
            BoxMinus(parse_interval("[0,1]"), rel("P", "X")),
            rel("Q", "X"),
        )

    def test_parenthesised_until_operand(self) -> None:
        """Nested binary operators need parentheses."""
        atom = parse_metric_atom("(P UNTIL[0,1] Q) UNTIL[1,2] TOP")
        assert isinstance(atom, Until)
        assert isinstance(atom.left, Until)
        assert atom.right == Top()

    def test_fractional_range(self) -> None:
        """Ranges accept fractions and decimals."""
        atom = parse_metric_atom("DIAMONDMINUS[1/2,2.5] P")
        assert isinstance(atom, DiamondMinus)
        assert atom.range == Interval(Fraction(1, 2), Fraction(5, 2))

    def test_unsafe_since_rule(self) -> None:
        """A head variable only in a left operand of SINCE is unsafe."""
        with pytest.raises(ParseError, match="unsafe: head variable X"):
            parse_rule("P(X) <- Q(X) SINCE[0,0] TOP")

    def test_unsafe_rule_reports_name(self) -> None:
        """The error names the offending rule."""
        with pytest.raises(ParseError, match="rule r2"):
            parse_program("P(X) <- Q(X)\nP(Y) <- Q(X)\n")

    def test_negative_range(self) -> None:
        """Operator ranges must be non-negative."""
        with pytest.raises(ParseError, match="negative operator range"):
            parse_rule("P(X) <- DIAMONDMINUS[-1,1] Q(X)")

    def test_arity_mismatch(self) -> None:
        """A predicate keeps the arity of its first use."""
        with pytest.raises(ParseError, match="arity") as excinfo:
            parse_program("P(X) <- Q(X)\nP(X) <- Q(X,Y)\n")
        assert excinfo.value.line == 2

    def test_vacuous_body(self) -> None:
        """Bodies true without any facts must be stated as facts."""
        with pytest.raises(ParseError, match="vacuously"):
            parse_rule("P <- TOP")
        with pytest.raises(ParseError, match="vacuously"):
            parse_rule("P <- DIAMONDMINUS[1,2] TOP")

    def test_non_vacuous_since_over_top(self) -> None:
        """TOP SINCE a relational atom still needs facts."""
        rule = parse_rule("P(X) <- TOP SINCE[0,1] Q(X)")
        assert rule.head == rel("P", "X")

    def test_invalid_head(self) -> None:
        """Diamonds are not allowed in heads."""
        with pytest.raises(ParseError, match="head"):
            parse_rule("DIAMONDMINUS[0,1] P(X) <- Q(X)")

    def test_bottom_head(self) -> None:
        """BOTTOM heads declare constraints."""
        rule = parse_rule("BOTTOM <- P(X) AND Q(X)")
        assert rule.is_constraint

    def test_syntax_error_location(self) -> None:
        """Syntax errors carry line and column."""
        with pytest.raises(ParseError) as excinfo:
            parse_program("P(X) <- Q(X)\nP(X) <- Q(X) AND\n")
        assert excinfo.value.line == 2
        assert excinfo.value.column > 1


class TestParseDataset:
    """Tests for parse_dataset and parse_fact."""

    def test_fact(self) -> None:
        """A binary fact with a closed interval."""
        assert parse_fact("R1(c1,c2)@[0,1]") == Fact(rel("R1", "c1", "c2"), Interval(0, 1))

    def test_unary_fact(self) -> None:
        """A unary fact."""
        assert parse_fact("R5(c2)@[0,1]") == Fact(rel("R5", "c2"), Interval(0, 1))

    def test_quoted_constant(self) -> None:
        """Quoted constants may contain any characters."""
        fact = parse_fact('Name("Alice Smith")@[0,+inf)')
        assert fact.atom.args == (Constant("Alice Smith"),)

    def test_variable_in_fact(self) -> None:
        """Facts must be ground."""
        with pytest.raises(ParseError, match="variable X"):
            parse_fact("P(X)@[0,1]")

    def test_empty_interval(self) -> None:
        """Empty intervals are reported as parse errors."""
        with pytest.raises(ParseError, match="empty"):
            parse_dataset("P(a)@(1,1]\n")

    def test_shared_arity_table(self) -> None:
        """Program and dataset share one arity table."""
        table = ArityTable()
        parse_program("P(X) <- Q(X)\n", table)
        with pytest.raises(ParseError, match="arity"):
            parse_dataset("Q(a,b)@[0,1]\n", table)

    def test_reports_line_of_bad_fact(self) -> None:
        """Malformed lines report their line number."""
        with pytest.raises(ParseError) as excinfo:
            parse_dataset("P(a)@[0,1]\nP(a)[0,1]\n")
        assert excinfo.value.line == 2
