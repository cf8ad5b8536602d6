"""Forward-chaining materialisation procedures."""

from __future__ import annotations

from metricdl.materialise.runner import (
    DEFAULT_MAX_STEPS,
    Materialiser,
    check_bottom_rules,
    materialise,
    materialise_halt,
)
from metricdl.materialise.state import MaterialisationState, StepOutcome
from metricdl.materialise.trace import JsonLinesTrace, StepRecord, TraceSink, read_trace

__all__ = [
    "DEFAULT_MAX_STEPS",
    "JsonLinesTrace",
    "MaterialisationState",
    "Materialiser",
    "StepOutcome",
    "StepRecord",
    "TraceSink",
    "check_bottom_rules",
    "materialise",
    "materialise_halt",
    "read_trace",
]
