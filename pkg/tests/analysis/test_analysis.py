"""Tests for dependency analysis and propagation classes."""

from __future__ import annotations

import random

from metricdl.analysis import (
    BOTTOM_VERTEX,
    analyze,
    classify_predicates,
    dependency_graph,
    nonrecursive_atoms,
    propagation_class,
    recursive_fragment,
    recursive_predicates,
    relevant_rules,
    to_dot,
)
from metricdl.syntax import Program, parse_program
from metricdl.types import PredicateClass, PropagationClass
from tests.helpers.corpus import random_program


def names(program: Program) -> list[str]:
    return [rule.name for rule in program.rules]


def brute_force_recursive(program: Program) -> set[str]:
    graph = dependency_graph(program).successors

    def reach(start: str) -> set[str]:
        seen: set[str] = set()
        frontier = list(graph[start])
        while frontier:
            vertex = frontier.pop()
            if vertex not in seen:
                seen.add(vertex)
                frontier.extend(graph[vertex])
        return seen

    on_cycle = {vertex for vertex in graph if vertex in reach(vertex)}
    result = set(on_cycle)
    for vertex in on_cycle:
        result |= reach(vertex)
    result.discard(BOTTOM_VERTEX)
    return result


class TestClassifyPredicates:
    """Tests for recursion classification."""

    def test_running_example(self, example_program: Program) -> None:
        """R1 and R6 are recursive, the rest are not."""
        classes = classify_predicates(example_program)
        assert {p for p, c in classes.items() if c is PredicateClass.RECURSIVE} == {"R1", "R6"}
        assert {p for p, c in classes.items() if c is PredicateClass.NONRECURSIVE} == {"R2", "R3", "R4", "R5"}

    def test_empty_program(self) -> None:
        """Nothing is recursive without rules."""
        assert classify_predicates(Program()) == {}

    def test_self_loop(self) -> None:
        """A self-loop makes a predicate recursive."""
        program = parse_program("P(X) <- DIAMONDMINUS[1,1] P(X)\n")
        assert recursive_predicates(program) == frozenset({"P"})

    def test_two_cycle_feeds_downstream(self) -> None:
        """Predicates fed by a two-vertex cycle are recursive too."""
        program = parse_program("P(X) <- Q(X)\nQ(X) <- P(X)\nR(X) <- Q(X)\nS(X) <- T(X)\n")
        assert recursive_predicates(program) == frozenset({"P", "Q", "R"})

    def test_agrees_with_brute_force(self) -> None:
        """Component-based classification matches explicit cycle search."""
        rng = random.Random(21)
        for _ in range(200):
            program = random_program(rng, rules=rng.randint(1, 5), constraints=True)
            assert recursive_predicates(program) == brute_force_recursive(program)


class TestRelevantRules:
    """Tests for relevant_rules."""

    def test_all_rules_feed_r6(self, example_program: Program) -> None:
        """Every rule of the running example feeds R6."""
        assert names(relevant_rules(example_program, "R6")) == ["r1", "r2", "r3", "r4"]

    def test_nothing_defines_r3(self, example_program: Program) -> None:
        """R3 has no defining rule."""
        assert len(relevant_rules(example_program, "R3")) == 0

    def test_target_r4(self, example_program: Program) -> None:
        """R4 depends on r3 and, through R5, on r2."""
        assert names(relevant_rules(example_program, "R4")) == ["r2", "r3"]

    def test_unknown_target(self, example_program: Program) -> None:
        """A predicate absent from the program selects nothing."""
        assert len(relevant_rules(example_program, "Nope")) == 0

    def test_constraints_always_relevant(self) -> None:
        """Constraint rules and their feeders survive any target."""
        program = parse_program("Q(X) <- R(X)\nBOTTOM <- Q(X) AND S(X)\nP(X) <- T(X)\n")
        assert names(relevant_rules(program, "P")) == ["r1", "r2", "r3"]

    def test_closed_under_reapplication(self) -> None:
        """Filtering twice changes nothing."""
        rng = random.Random(4)
        for _ in range(100):
            program = random_program(rng, rules=4, constraints=True)
            once = relevant_rules(program, "P")
            assert relevant_rules(once, "P") == once


class TestPropagation:
    """Tests for propagation classes."""

    def test_running_example_is_mixed(self, example_program: Program) -> None:
        """A future box in r2's body makes the whole program mixed."""
        assert propagation_class(example_program) is PropagationClass.MIXED

    def test_running_example_recursive_fragment_is_forward(self, example_program: Program) -> None:
        """The recursive rules r1 and r4 only look into the past."""
        fragment = recursive_fragment(example_program, recursive_predicates(example_program))
        assert names(fragment) == ["r1", "r4"]
        assert propagation_class(fragment) is PropagationClass.FORWARD

    def test_empty_program_is_forward(self) -> None:
        """The empty program is vacuously forward."""
        assert propagation_class(Program()) is PropagationClass.FORWARD

    def test_mixed(self) -> None:
        """Past and future diamonds in different rules mix."""
        program = parse_program("P(X) <- DIAMONDMINUS[1,1] Q(X)\nR(X) <- DIAMONDPLUS[1,1] S(X)\n")
        assert propagation_class(program) is PropagationClass.MIXED

    def test_backward(self) -> None:
        """Future bodies with past-box heads propagate backwards."""
        program = parse_program("BOXMINUS[1,1] P(X) <- Q(X) UNTIL[0,1] P(X)\n")
        assert propagation_class(program) is PropagationClass.BACKWARD

    def test_top_makes_rule_neither(self) -> None:
        """Rules mentioning TOP are neither forward nor backward."""
        program = parse_program("P(X) <- TOP SINCE[0,1] Q(X)\n")
        assert propagation_class(program) is PropagationClass.MIXED


class TestNonRecursiveAtoms:
    """Tests for the per-rule non-recursive body atoms."""

    def test_rule_r4(self, example_program: Program) -> None:
        """R1 is recursive, so only the R4 and R5 atoms remain."""
        atoms = nonrecursive_atoms(example_program.rule("r4"), recursive_predicates(example_program))
        assert len(atoms) == 2


class TestReport:
    """Tests for the analyze report."""

    def test_dot_marks_recursive_vertices(self, example_program: Program) -> None:
        """Recursive predicates are drawn as double circles."""
        report = analyze(example_program)
        dot = to_dot(report.graph, report.classes)
        assert '"R1" [shape=doublecircle];' in dot
        assert '"R2" [shape=circle];' in dot
        assert '"R1" -> "R6";' in dot
        assert report.recursive_propagation is PropagationClass.FORWARD
