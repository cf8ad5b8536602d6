"""Tests for printing, mirroring and grounding."""

from __future__ import annotations

import pytest

from metricdl.syntax import (
    Dataset,
    Program,
    format_dataset,
    format_program,
    ground,
    mirror_program,
    parse_dataset,
    parse_metric_atom,
    parse_program,
)
from metricdl.syntax.printer import format_atom
from tests.helpers.running_example import DATASET_TEXT


class TestRoundTrip:
    """Printing then parsing returns the same value."""

    def test_running_example_program(self, example_program: Program) -> None:
        """The running example round-trips."""
        assert parse_program(format_program(example_program)) == example_program

    def test_running_example_dataset(self, example_dataset: Dataset) -> None:
        """The running example dataset round-trips and prints canonically."""
        assert parse_dataset(format_dataset(example_dataset)) == example_dataset
        assert format_dataset(example_dataset) == DATASET_TEXT

    @pytest.mark.parametrize(
        "text",
        [
            "(P SINCE[0,1] Q) UNTIL(1,+inf) R",
            "DIAMONDPLUS[1/2,3) (P SINCE[0,0] Q)",
            "BOXMINUS[0,2] BOXPLUS(0,1] P(a,X)",
            'P("Two words",x1)',
        ],
    )
    def test_metric_atoms(self, text: str) -> None:
        """Nested and quoted atoms round-trip."""
        atom = parse_metric_atom(text)
        assert parse_metric_atom(format_atom(atom)) == atom

    def test_labels_survive(self) -> None:
        """Custom labels are printed back."""
        program = parse_program("keep: P(X) <- Q(X)\n")
        assert format_program(program) == "keep: P(X) <- Q(X)\n"
        assert parse_program(format_program(program)).rules[0].name == "keep"


class TestMirror:
    """Tests for past/future reflection."""

    def test_mirror_swaps_operators(self) -> None:
        """Past operators become future ones and back."""
        program = parse_program("BOXPLUS[1,1] P(X) <- DIAMONDMINUS[0,1] Q(X) AND R(X) SINCE[0,2] S(X)\n")
        mirrored = mirror_program(program)
        assert format_program(mirrored) == "BOXMINUS[1,1] P(X) <- DIAMONDPLUS[0,1] Q(X) AND R(X) UNTIL[0,2] S(X)\n"
        assert mirror_program(mirrored) == program


class TestGround:
    """Tests for ground."""

    def test_running_example_rule_three(self, example_program: Program, example_dataset: Dataset) -> None:
        """One variable over three constants gives three ground rules."""
        grounded = [rule for rule in ground(example_program, example_dataset) if rule.name == "r3"]
        assert len(grounded) == 3

    def test_counts_match_power(self, example_program: Program, example_dataset: Dataset) -> None:
        """Each rule grounds to |constants| ** |variables| instances."""
        grounded = ground(example_program, example_dataset)
        assert len(grounded) == 9 + 27 + 3 + 9

    def test_variable_free_program(self) -> None:
        """A program without variables grounds to itself."""
        program = parse_program("P <- DIAMONDMINUS[1,1] P\n")
        assert ground(program, Dataset()) == list(program.rules)

    def test_no_constants(self) -> None:
        """Rules with variables vanish without constants."""
        program = parse_program("P(X) <- Q(X)\n")
        assert ground(program, Dataset()) == []
