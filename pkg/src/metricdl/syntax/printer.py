"""Textual rendering in the same syntax the parser accepts."""

from __future__ import annotations

import re

from metricdl.syntax.ast import (
    BINARY_TYPES,
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
)

__all__ = [
    "format_atom",
    "format_dataset",
    "format_fact",
    "format_program",
    "format_rule",
    "format_term",
]

_BARE_CONSTANT = re.compile(r"[a-z0-9][A-Za-z0-9_]*")

_OPERATOR_NAMES: dict[type, str] = {
    DiamondMinus: "DIAMONDMINUS",
    DiamondPlus: "DIAMONDPLUS",
    BoxMinus: "BOXMINUS",
    BoxPlus: "BOXPLUS",
    Since: "SINCE",
    Until: "UNTIL",
}


def format_term(term: Term) -> str:
    if isinstance(term, Constant) and not _BARE_CONSTANT.fullmatch(term.name):
        escaped = term.name.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    return term.name


def _operand(atom: MetricAtom) -> str:
    text = format_atom(atom)
    return f"({text})" if isinstance(atom, BINARY_TYPES) else text


def format_atom(atom: MetricAtom) -> str:
    match atom:
        case Top():
            return "TOP"
        case Bottom():
            return "BOTTOM"
        case Relational(predicate, args):
            if not args:
                return predicate
            return f"{predicate}({','.join(format_term(arg) for arg in args)})"
        case Since(rng, left, right) | Until(rng, left, right):
            return f"{_operand(left)} {_OPERATOR_NAMES[type(atom)]}{rng} {_operand(right)}"
        case DiamondMinus(rng, operand) | DiamondPlus(rng, operand) | BoxMinus(rng, operand) | BoxPlus(rng, operand):
            return f"{_OPERATOR_NAMES[type(atom)]}{rng} {_operand(operand)}"
    raise TypeError(f"not a metric atom: {atom!r}")


def format_rule(rule: Rule, *, label: bool = False) -> str:
    text = f"{format_atom(rule.head)} <- {' AND '.join(format_atom(atom) for atom in rule.body)}"
    return f"{rule.name}: {text}" if label and rule.name else text


def format_program(program: Program) -> str:
    """One rule per line; rules whose name differs from their position keep a label."""
    lines = [
        format_rule(rule, label=rule.name != f"r{index}") for index, rule in enumerate(program.rules, start=1)
    ]
    return "".join(f"{line}\n" for line in lines)


def format_fact(fact: Fact) -> str:
    return f"{format_atom(fact.atom)}@{fact.interval}"


def format_dataset(dataset: Dataset) -> str:
    return "".join(f"{format_fact(fact)}\n" for fact in dataset.facts)
