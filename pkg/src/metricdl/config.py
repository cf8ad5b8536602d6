"""Validated settings for materialisation, the automata budget and the engine."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from metricdl.types import MaterialisationMode, ReasoningMode

__all__ = ["AutomataBudget", "EngineConfig", "MaterialisationConfig"]


class MaterialisationConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: MaterialisationMode = MaterialisationMode.OPTIMISED
    max_steps: int = Field(default=10_000, ge=1)
    drop_rules: bool = True


class AutomataBudget(BaseModel):
    """Limits of one automata consistency check."""

    model_config = ConfigDict(frozen=True)

    max_states: int = Field(default=100_000, ge=1)
    max_seconds: float = Field(default=60.0, gt=0)


class EngineConfig(BaseModel):
    """How ``decide`` combines materialisation and the automata.

    With ``threads=1`` materialisation runs to its step budget before the
    automata start; with two threads they race.
    """

    model_config = ConfigDict(frozen=True)

    mode: ReasoningMode = ReasoningMode.AUTO
    threads: Literal[1, 2] = 2
    filter_relevant: bool = True
    materialisation: MaterialisationConfig = Field(default_factory=MaterialisationConfig)
    automata: AutomataBudget = Field(default_factory=AutomataBudget)
