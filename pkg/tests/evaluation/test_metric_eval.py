"""Tests for metric atom evaluation against stored facts."""

from __future__ import annotations

import random

import pytest

from metricdl.evaluation import bindings, evaluate, is_satisfiable, max_right_endpoint, min_left_endpoint
from metricdl.store import FactStore
from metricdl.syntax import Constant, Relational, parse_dataset, parse_metric_atom, substitute
from metricdl.temporal import NEG_INF, POS_INF, Interval, parse_interval
from tests.helpers.corpus import random_body_atom, random_dataset
from tests.helpers.oracle import oracle_intervals


def ivs(*texts: str) -> list[Interval]:
    return [parse_interval(text) for text in texts]


def store_of(text: str) -> FactStore:
    return FactStore.from_dataset(parse_dataset(text))


class TestEvaluate:
    """Tests for evaluate on ground atoms."""

    def test_future_box_erodes(self, example_store: FactStore) -> None:
        """R3 on [2,3] eroded by [1,2] leaves [1,1]."""
        assert evaluate(example_store, parse_metric_atom("BOXPLUS[1,2] R3(c2,c3)")) == ivs("[1,1]")

    def test_past_diamond_coalesces(self, store_step_1: FactStore) -> None:
        """The dilations [0,2] and [2,3] touch and merge."""
        assert evaluate(store_step_1, parse_metric_atom("DIAMONDMINUS[0,1] R5(c2)")) == ivs("[0,3]")

    def test_zero_box_is_identity(self, store_step_1: FactStore) -> None:
        """A box over [0,0] holds exactly where its operand holds."""
        assert evaluate(store_step_1, parse_metric_atom("BOXMINUS[0,0] R5(c2)")) == ivs("[0,1]", "[2,2]")

    def test_unknown_atom_is_empty(self, example_store: FactStore) -> None:
        """An atom without facts holds nowhere."""
        assert evaluate(example_store, parse_metric_atom("R6(c2)")) == []

    def test_top_and_bottom(self, example_store: FactStore) -> None:
        """TOP holds everywhere and BOTTOM nowhere."""
        assert evaluate(example_store, parse_metric_atom("TOP")) == [Interval(NEG_INF, POS_INF, False, False)]
        assert evaluate(example_store, parse_metric_atom("BOTTOM")) == []

    def test_unbounded_diamond(self) -> None:
        """An unbounded past diamond holds forever after its operand starts."""
        store = store_of("P(a)@[1,2]\n")
        assert evaluate(store, parse_metric_atom("DIAMONDMINUS[0,+inf) P(a)")) == [Interval(1, POS_INF, True, False)]

    def test_unbounded_box_needs_infinite_operand(self) -> None:
        """Erosion by an unbounded range keeps only half-infinite operands."""
        store = store_of("P(a)@[1,2]\nQ(a)@[1,+inf)\n")
        assert evaluate(store, parse_metric_atom("BOXPLUS[0,+inf) P(a)")) == []
        assert evaluate(store, parse_metric_atom("BOXPLUS[0,+inf) Q(a)")) == [Interval(1, POS_INF, True, False)]

    def test_since_with_open_continuity(self) -> None:
        """The left operand only needs to hold strictly between witness and now."""
        store = store_of("P(a)@(0,2]\nQ(a)@[0,0]\n")
        assert evaluate(store, parse_metric_atom("P(a) SINCE[0,1] Q(a)")) == ivs("[0,1]")
        assert evaluate(store, parse_metric_atom("P(a) SINCE(0,1] Q(a)")) == ivs("(0,1]")

    def test_until_mirrors_since(self) -> None:
        """Until looks ahead for its witness."""
        store = store_of("P(a)@[0,3)\nQ(a)@[3,3]\n")
        assert evaluate(store, parse_metric_atom("P(a) UNTIL[1,2] Q(a)")) == ivs("[1,2]")

    def test_binding_applied(self, example_store: FactStore) -> None:
        """Variables are replaced before evaluation."""
        atom = parse_metric_atom("DIAMONDMINUS[1,1] R1(X,Y)")
        assert evaluate(example_store, atom, {"X": "c1", "Y": "c2"}) == ivs("[1,2]")

    def test_unbound_variable_rejected(self, example_store: FactStore) -> None:
        """Evaluating an atom with a free variable is an error."""
        with pytest.raises(ValueError, match="unbound"):
            evaluate(example_store, parse_metric_atom("R5(X)"))

    def test_memo_cleared_on_insert(self) -> None:
        """Derived results do not survive a store change."""
        store = store_of("P(a)@[0,1]\n")
        atom = parse_metric_atom("DIAMONDPLUS[1,1] P(a)")
        assert evaluate(store, atom) == ivs("[-1,0]")
        store.insert_interval(("P", ("a",)), Interval(3, 4))
        assert evaluate(store, atom) == ivs("[-1,0]", "[2,3]")

    def test_matches_pointwise_oracle(self) -> None:
        """Interval arithmetic agrees with cell-by-cell semantics."""
        rng = random.Random(5)
        for _ in range(120):
            dataset = random_dataset(rng, facts=rng.randint(1, 8), halves=True)
            atom = substitute(random_body_atom(rng, 3), {"X": "a"})
            store = FactStore.from_dataset(dataset)
            assert evaluate(store, atom) == oracle_intervals(dataset.facts, atom), atom

    @pytest.mark.slow
    def test_matches_pointwise_oracle_large(self) -> None:
        """The oracle agreement holds over a thousand random pairs."""
        rng = random.Random(1234)
        for _ in range(1000):
            dataset = random_dataset(rng, facts=rng.randint(1, 20), halves=True)
            atom = substitute(random_body_atom(rng, 3), {"X": rng.choice("ab")})
            store = FactStore.from_dataset(dataset)
            assert evaluate(store, atom) == oracle_intervals(dataset.facts, atom), atom


class TestBindings:
    """Tests for substitution enumeration."""

    def test_join_through_shared_variable(self, example_store: FactStore) -> None:
        """R2 and R3 join on Y."""
        atoms = [parse_metric_atom("R2(X,Y)"), parse_metric_atom("BOXPLUS[1,2] R3(Y,Z)")]
        found = list(bindings(atoms, example_store, example_store.constants()))
        assert found == [{"X": "c1", "Y": "c2", "Z": "c3"}]

    def test_no_match_without_facts(self, example_store: FactStore) -> None:
        """A leaf without stored atoms blocks every substitution."""
        atoms = [parse_metric_atom("R1(X,Y)"), parse_metric_atom("BOXMINUS[0,2] R4(Y)")]
        assert list(bindings(atoms, example_store, example_store.constants())) == []

    def test_seed_restricts(self, example_store: FactStore) -> None:
        """A seed fixes variables before matching."""
        atoms = [parse_metric_atom("R1(X,Y)")]
        assert list(bindings(atoms, example_store, example_store.constants(), {"X": "c2"})) == []

    def test_since_left_variables_range_over_domain(self) -> None:
        """Variables only in a since left operand take every domain constant."""
        store = store_of("Q(a)@[0,1]\n")
        atoms = [parse_metric_atom("P(Y) SINCE[0,1] Q(X)")]
        found = list(bindings(atoms, store, ["a", "b"]))
        assert found == [{"X": "a", "Y": "a"}, {"X": "a", "Y": "b"}]


class TestEndpoints:
    """Tests for satisfiability and extreme endpoints."""

    def test_extremes(self, store_step_2: FactStore) -> None:
        """The eroded R4 ends at 3, R5 at 2."""
        assert max_right_endpoint(store_step_2, parse_metric_atom("BOXMINUS[0,2] R4(Y)")) == 3
        assert max_right_endpoint(store_step_2, parse_metric_atom("R5(Y)")) == 2
        assert min_left_endpoint(store_step_2, parse_metric_atom("R5(Y)")) == 0

    def test_unsatisfiable(self, example_store: FactStore) -> None:
        """No R4 facts means no R4 atom holds."""
        assert not is_satisfiable(example_store, parse_metric_atom("BOXMINUS[0,2] R4(Y)"))
        assert max_right_endpoint(example_store, parse_metric_atom("R4(Y)")) is None
        assert is_satisfiable(example_store, Relational("R5", (Constant("c2"),)))
