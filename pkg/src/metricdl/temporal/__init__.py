"""Exact time points and the interval algebra."""

from __future__ import annotations

from metricdl.temporal.interval import (
    ALWAYS,
    Interval,
    coalesce_all,
    coalesce_pair,
    contains,
    dilate_future,
    dilate_past,
    erode_future,
    erode_past,
    format_interval,
    intersect,
    make_interval,
    parse_interval,
    restrict_left,
    restrict_right,
    shift_minus,
    shift_plus,
    union_compatible,
)
from metricdl.temporal.timepoint import (
    NEG_INF,
    POS_INF,
    Infinity,
    TimePoint,
    format_time_point,
    is_finite,
    parse_time_point,
)

__all__ = [
    "ALWAYS",
    "NEG_INF",
    "POS_INF",
    "Infinity",
    "Interval",
    "TimePoint",
    "coalesce_all",
    "coalesce_pair",
    "contains",
    "dilate_future",
    "dilate_past",
    "erode_future",
    "erode_past",
    "format_interval",
    "format_time_point",
    "intersect",
    "is_finite",
    "make_interval",
    "parse_interval",
    "parse_time_point",
    "restrict_left",
    "restrict_right",
    "shift_minus",
    "shift_plus",
    "union_compatible",
]
