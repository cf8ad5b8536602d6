"""Small enums shared across layers."""

from __future__ import annotations

from enum import Enum


class _StrEnum(str, Enum):
    """String-valued enum that behaves like str at runtime."""

    def __str__(self) -> str:
        return str(self.value)


class PredicateClass(_StrEnum):
    """Whether a predicate can be derived through a cycle of rules."""

    RECURSIVE = "recursive"
    NONRECURSIVE = "nonrecursive"


class PropagationClass(_StrEnum):
    """Direction in which a program moves facts along the timeline."""

    FORWARD = "forward"
    BACKWARD = "backward"
    MIXED = "mixed"


class MaterialisationMode(_StrEnum):
    NAIVE = "naive"
    SEMINAIVE = "seminaive"
    OPTIMISED = "optimised"


class ReasoningMode(_StrEnum):
    """Strategy selected for an entailment check."""

    AUTO = "auto"
    NAIVE = "naive"
    SEMINAIVE = "seminaive"
    OPTIMISED = "optimised"
    AUTOMATA = "automata"


class Verdict(_StrEnum):
    INCONSISTENT = "inconsistent"
    ENTAILED = "entailed"
    NOT_ENTAILED = "notEntailed"


class Provenance(_StrEnum):
    """Which phase of the engine produced a verdict."""

    PRE_MATERIALISATION = "pre-materialisation"
    MATERIALISATION = "materialisation"
    AUTOMATA = "automata"


class OutcomeKind(_StrEnum):
    """How a materialisation step or run ended."""

    INCONSISTENT = "inconsistent"
    ENTAILED = "entailed"
    FIXPOINT = "fixpoint"
    CONTINUE = "continue"
    HALTED = "halted"


class AuxKind(_StrEnum):
    """Unbounded operator unfolded one cell at a time by the automata."""

    SINCE = "since"
    HISTORICALLY = "historically"
    UNTIL = "until"
    HENCEFORTH = "henceforth"
