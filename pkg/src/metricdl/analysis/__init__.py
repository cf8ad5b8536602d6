"""Static analysis of programs: dependencies, recursion, relevance, propagation."""

from __future__ import annotations

from metricdl.analysis.dependency_graph import (
    BOTTOM_VERTEX,
    DependencyGraph,
    classify_predicates,
    dependency_graph,
    nonrecursive_atoms,
    recursive_fragment,
    recursive_predicates,
    relevant_rules,
)
from metricdl.analysis.propagation import is_backward_propagating, is_forward_propagating, propagation_class
from metricdl.analysis.report import AnalysisReport, analyze, format_report, to_dot

__all__ = [
    "BOTTOM_VERTEX",
    "AnalysisReport",
    "DependencyGraph",
    "analyze",
    "classify_predicates",
    "dependency_graph",
    "format_report",
    "is_backward_propagating",
    "is_forward_propagating",
    "nonrecursive_atoms",
    "propagation_class",
    "recursive_fragment",
    "recursive_predicates",
    "relevant_rules",
    "to_dot",
]
