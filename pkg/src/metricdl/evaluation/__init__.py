"""Metric atom semantics over a store, temporal joins and rule instances."""

from __future__ import annotations

from metricdl.evaluation.instances import InstanceLog, RuleInstance, derive_head, instances, instances_relative
from metricdl.evaluation.join import join_intervals
from metricdl.evaluation.metric import bindings, evaluate, is_satisfiable, max_right_endpoint, min_left_endpoint

__all__ = [
    "InstanceLog",
    "RuleInstance",
    "bindings",
    "derive_head",
    "evaluate",
    "instances",
    "instances_relative",
    "is_satisfiable",
    "join_intervals",
    "max_right_endpoint",
    "min_left_endpoint",
]
