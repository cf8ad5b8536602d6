"""The combined decision procedure and its thread race."""

from __future__ import annotations

from metricdl.engine.decision import (
    ConsistencyDecision,
    ConsistencyMethod,
    Decision,
    check_consistency,
    decide,
    decide_async,
)
from metricdl.engine.race import Contender, RaceOutcome, race

__all__ = [
    "ConsistencyDecision",
    "ConsistencyMethod",
    "Contender",
    "Decision",
    "RaceOutcome",
    "check_consistency",
    "decide",
    "decide_async",
    "race",
]
