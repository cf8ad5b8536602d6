"""pyparsing grammar for rule, fact and metric-atom lines.

Operators are ASCII keywords followed by a range, e.g.
``R4(X) <- DIAMONDMINUS[0,1] R5(X)``. Unary operators bind tighter than
``SINCE``/``UNTIL``, which take unary operands and need parentheses to nest.
"""

from __future__ import annotations

from typing import Any

import pyparsing as pp

from metricdl.syntax.ast import (
    BOTTOM,
    TOP,
    BoxMinus,
    BoxPlus,
    Constant,
    DiamondMinus,
    DiamondPlus,
    Fact,
    Relational,
    Rule,
    Since,
    Until,
    Variable,
)
from metricdl.temporal.interval import INTERVAL

__all__ = ["FACT_LINE", "KEYWORDS", "METRIC_ATOM", "RULE_LINE", "TERM"]

KEYWORDS = ("DIAMONDMINUS", "DIAMONDPLUS", "BOXMINUS", "BOXPLUS", "SINCE", "UNTIL", "TOP", "BOTTOM", "AND")

_UNARY = {
    "DIAMONDMINUS": DiamondMinus,
    "DIAMONDPLUS": DiamondPlus,
    "BOXMINUS": BoxMinus,
    "BOXPLUS": BoxPlus,
}
_BINARY = {"SINCE": Since, "UNTIL": Until}

_LPAR, _RPAR, _COMMA = map(pp.Suppress, "(),")
_KEYWORD = pp.MatchFirst([pp.Keyword(word) for word in KEYWORDS])

IDENTIFIER = (~_KEYWORD + pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*")).set_name("identifier")

_VARIABLE = pp.Regex(r"[A-Z][A-Za-z0-9_]*").set_name("variable")
_VARIABLE.set_parse_action(lambda tokens: Variable(tokens[0]))
_CONSTANT = (pp.Regex(r"[a-z0-9][A-Za-z0-9_]*") | pp.QuotedString('"', esc_char="\\")).set_name("constant")
_CONSTANT.set_parse_action(lambda tokens: Constant(tokens[0]))
TERM = (_VARIABLE | _CONSTANT).set_name("term")


def _relational(tokens: pp.ParseResults) -> Relational:
    return Relational(tokens[0], tuple(tokens[1:]))


RELATIONAL = (IDENTIFIER + pp.Opt(_LPAR + pp.Opt(pp.DelimitedList(TERM)) + _RPAR)).set_name("relational atom")
RELATIONAL.set_parse_action(_relational)

_TOP = pp.Keyword("TOP").set_parse_action(lambda: TOP)
_BOTTOM = pp.Keyword("BOTTOM").set_parse_action(lambda: BOTTOM)

METRIC_ATOM = pp.Forward().set_name("metric atom")
_UNARY_ATOM = pp.Forward().set_name("unary atom")
_PRIMARY = _TOP | _BOTTOM | RELATIONAL | (_LPAR + METRIC_ATOM + _RPAR)

_UNARY_OP = pp.MatchFirst([pp.Keyword(word) for word in _UNARY])
_BINARY_OP = pp.MatchFirst([pp.Keyword(word) for word in _BINARY])


def _unary(tokens: pp.ParseResults) -> object:
    return _UNARY[tokens[0]](tokens[1], tokens[2])


def _binary(tokens: pp.ParseResults) -> object:
    if len(tokens) == 1:
        return tokens[0]
    return _BINARY[tokens[1]](tokens[2], tokens[0], tokens[3])


_UNARY_ATOM <<= (_UNARY_OP + INTERVAL + _UNARY_ATOM).set_parse_action(_unary) | _PRIMARY
METRIC_ATOM <<= (_UNARY_ATOM + pp.Opt(_BINARY_OP + INTERVAL + _UNARY_ATOM)).set_parse_action(_binary)


def _named(tokens: pp.ParseResults, name: str) -> Any:
    value = tokens[name]
    return value[0] if isinstance(value, pp.ParseResults) else value


def _rule(tokens: pp.ParseResults) -> Rule:
    label = _named(tokens, "label") if "label" in tokens else ""
    return Rule(_named(tokens, "head"), tuple(tokens["body"]), str(label))


_LABEL = IDENTIFIER("label") + pp.Suppress(":")
RULE_LINE = (
    pp.Opt(_LABEL)
    + METRIC_ATOM("head")
    + pp.Suppress("<-")
    + pp.Group(METRIC_ATOM + pp.ZeroOrMore(pp.Suppress(pp.Keyword("AND")) + METRIC_ATOM))("body")
).set_name("rule")
RULE_LINE.set_parse_action(_rule)
RULE_LINE.ignore(pp.python_style_comment)

FACT_LINE = (RELATIONAL("atom") + pp.Suppress("@") + INTERVAL("interval")).set_name("fact")
FACT_LINE.set_parse_action(lambda tokens: Fact(_named(tokens, "atom"), _named(tokens, "interval")))
FACT_LINE.ignore(pp.python_style_comment)
