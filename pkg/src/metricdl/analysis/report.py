"""Human-readable analysis report and DOT rendering of the dependency graph."""

from __future__ import annotations

from collections.abc import Mapping
from typing import NamedTuple

from metricdl.analysis.dependency_graph import (
    BOTTOM_VERTEX,
    DependencyGraph,
    classify_predicates,
    dependency_graph,
    recursive_fragment,
    recursive_predicates,
)
from metricdl.analysis.propagation import propagation_class
from metricdl.syntax.ast import Program
from metricdl.types import PredicateClass, PropagationClass

__all__ = ["AnalysisReport", "analyze", "format_report", "to_dot"]


class AnalysisReport(NamedTuple):
    """Static facts about a program."""

    classes: dict[str, PredicateClass]
    propagation: PropagationClass
    recursive_propagation: PropagationClass  # of the recursive fragment only
    graph: DependencyGraph


def to_dot(graph: DependencyGraph, classes: Mapping[str, PredicateClass]) -> str:
    lines = ["digraph dependencies {"]
    for vertex in sorted(graph.vertices):
        shape = "doublecircle" if classes.get(vertex) is PredicateClass.RECURSIVE else "circle"
        if vertex == BOTTOM_VERTEX:
            shape = "box"
        lines.append(f'  "{vertex}" [shape={shape}];')
    for source, target in graph.edges():
        lines.append(f'  "{source}" -> "{target}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def analyze(program: Program) -> AnalysisReport:
    recursive = recursive_predicates(program)
    return AnalysisReport(
        classes=classify_predicates(program),
        propagation=propagation_class(program),
        recursive_propagation=propagation_class(recursive_fragment(program, recursive)),
        graph=dependency_graph(program),
    )


def format_report(report: AnalysisReport) -> str:
    width = max((len(predicate) for predicate in report.classes), default=9)
    lines = [f"{'predicate':<{width}}  class"]
    lines.extend(f"{predicate:<{width}}  {cls}" for predicate, cls in report.classes.items())
    lines.append("")
    lines.append(f"propagation: {report.propagation}")
    lines.append(f"recursive fragment propagation: {report.recursive_propagation}")
    lines.append("")
    return "\n".join(lines) + "\n" + to_dot(report.graph, report.classes)
