"""Automata-based consistency and entailment checking."""

from __future__ import annotations

from metricdl.automata.automaton import BuchiAutomaton, required_radius
from metricdl.automata.cells import CellSemantics, collect_aux
from metricdl.automata.consistency import ConsistencyReport, build_automata, check_consistency
from metricdl.automata.discretisation import Discretisation, build_discretisation, fraction_gcd, program_numbers
from metricdl.automata.emptiness import SearchBudget, non_empty
from metricdl.automata.grounding import relevant_grounding
from metricdl.automata.reduction import Reduction, reduce_entailment, reference_point
from metricdl.automata.window import Aux, Window, WindowSink, format_window, mirror_window

__all__ = [
    "Aux",
    "BuchiAutomaton",
    "CellSemantics",
    "ConsistencyReport",
    "Discretisation",
    "Reduction",
    "SearchBudget",
    "Window",
    "WindowSink",
    "build_automata",
    "build_discretisation",
    "check_consistency",
    "collect_aux",
    "format_window",
    "fraction_gcd",
    "mirror_window",
    "non_empty",
    "program_numbers",
    "reduce_entailment",
    "reference_point",
    "relevant_grounding",
    "required_radius",
]
