"""Syntax tree, parser, printer and grounding for metric temporal programs."""

from __future__ import annotations

from metricdl.syntax.ast import (
    BOTTOM,
    TOP,
    Bottom,
    BoxMinus,
    BoxPlus,
    Constant,
    Dataset,
    DiamondMinus,
    DiamondPlus,
    Fact,
    MetricAtom,
    Program,
    Relational,
    Rule,
    Since,
    Term,
    Top,
    Until,
    Variable,
    substitute,
)
from metricdl.syntax.grounding import ground, ground_rule
from metricdl.syntax.mirror import (
    mirror_atom,
    mirror_dataset,
    mirror_fact,
    mirror_interval,
    mirror_program,
    mirror_rule,
)
from metricdl.syntax.parser import (
    ArityTable,
    check_rule,
    parse_dataset,
    parse_fact,
    parse_metric_atom,
    parse_program,
    parse_rule,
)
from metricdl.syntax.printer import (
    format_atom,
    format_dataset,
    format_fact,
    format_program,
    format_rule,
    format_term,
)

__all__ = [
    "BOTTOM",
    "TOP",
    "ArityTable",
    "Bottom",
    "BoxMinus",
    "BoxPlus",
    "Constant",
    "Dataset",
    "DiamondMinus",
    "DiamondPlus",
    "Fact",
    "MetricAtom",
    "Program",
    "Relational",
    "Rule",
    "Since",
    "Term",
    "Top",
    "Until",
    "Variable",
    "check_rule",
    "format_atom",
    "format_dataset",
    "format_fact",
    "format_program",
    "format_rule",
    "format_term",
    "ground",
    "ground_rule",
    "mirror_atom",
    "mirror_dataset",
    "mirror_fact",
    "mirror_interval",
    "mirror_program",
    "mirror_rule",
    "parse_dataset",
    "parse_fact",
    "parse_metric_atom",
    "parse_program",
    "parse_rule",
    "substitute",
]
