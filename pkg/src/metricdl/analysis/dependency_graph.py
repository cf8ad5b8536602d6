"""Predicate dependency graph, recursion classification and relevance."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from metricdl.syntax.ast import MetricAtom, Program, Rule, atom_predicates
from metricdl.types import PredicateClass

__all__ = [
    "BOTTOM_VERTEX",
    "DependencyGraph",
    "classify_predicates",
    "dependency_graph",
    "nonrecursive_atoms",
    "recursive_fragment",
    "recursive_predicates",
    "relevant_rules",
]

BOTTOM_VERTEX = "⊥"


@dataclass(frozen=True)
class DependencyGraph:
    """Edges run from each body predicate to the head predicate of the same rule.

    Constraint rules point at the virtual vertex ``⊥``.
    """

    successors: Mapping[str, frozenset[str]]

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(self.successors)

    def predecessors(self) -> dict[str, set[str]]:
        return _reverse_adjacency(self.successors)

    def edges(self) -> list[tuple[str, str]]:
        return sorted((source, target) for source, targets in self.successors.items() for target in targets)


def _head_vertex(rule: Rule) -> str:
    predicate = rule.head_predicate
    return BOTTOM_VERTEX if predicate is None else predicate


def dependency_graph(program: Program) -> DependencyGraph:
    adjacency: dict[str, set[str]] = {predicate: set() for predicate in program.predicates()}
    for rule in program.rules:
        head = _head_vertex(rule)
        adjacency.setdefault(head, set())
        for predicate in rule.body_predicates():
            adjacency[predicate].add(head)
    return DependencyGraph({vertex: frozenset(targets) for vertex, targets in adjacency.items()})


def _get_components(adjacency: Mapping[str, frozenset[str] | set[str]]) -> list[set[str]]:
    assigned: set[str] = set()
    components: list[set[str]] = []
    reverse_adjacency = _reverse_adjacency(adjacency)
    for vertex in adjacency:
        if vertex in assigned:
            continue
        component = _reachable(vertex, adjacency) & _reachable(vertex, reverse_adjacency)
        assigned |= component
        components.append(component)
    return components


def _reachable(start: str, adjacency: Mapping[str, frozenset[str] | set[str]]) -> set[str]:
    visited: set[str] = set()
    stack = [start]
    while stack:
        vertex = stack.pop()
        if vertex in visited:
            continue
        visited.add(vertex)
        stack.extend(adjacency.get(vertex, ()))
    return visited


def _reverse_adjacency(adjacency: Mapping[str, frozenset[str] | set[str]]) -> dict[str, set[str]]:
    reversed_graph: dict[str, set[str]] = {vertex: set() for vertex in adjacency}
    for vertex, targets in adjacency.items():
        for target in targets:
            reversed_graph.setdefault(target, set()).add(vertex)
    return reversed_graph


def recursive_predicates(program: Program) -> frozenset[str]:
    """Predicates reachable from a cycle (self-loops included)."""
    graph = dependency_graph(program)
    adjacency = graph.successors
    recursive: set[str] = set()
    for component in _get_components(adjacency):
        if len(component) > 1 or any(vertex in adjacency[vertex] for vertex in component):
            for vertex in component:
                recursive |= _reachable(vertex, adjacency)
    recursive.discard(BOTTOM_VERTEX)
    return frozenset(recursive)


def classify_predicates(program: Program) -> dict[str, PredicateClass]:
    recursive = recursive_predicates(program)
    return {
        predicate: PredicateClass.RECURSIVE if predicate in recursive else PredicateClass.NONRECURSIVE
        for predicate in sorted(program.predicates())
    }


def relevant_rules(program: Program, target: str) -> Program:
    """Rules whose head can feed ``target`` or a constraint, in program order."""
    graph = dependency_graph(program)
    reverse = graph.predecessors()
    feeding: set[str] = set()
    for root in (target, BOTTOM_VERTEX):
        if root in reverse:
            feeding |= _reachable(root, reverse)
    return Program(tuple(rule for rule in program.rules if _head_vertex(rule) in feeding))


def recursive_fragment(program: Program, recursive: frozenset[str]) -> Program:
    """Derivation rules whose head predicate is recursive."""
    return Program(tuple(rule for rule in program.rules if rule.head_predicate in recursive))


def nonrecursive_atoms(rule: Rule, recursive: frozenset[str]) -> tuple[MetricAtom, ...]:
    """Body atoms mentioning no recursive predicate."""
    return tuple(atom for atom in rule.body if not atom_predicates(atom) & recursive)
