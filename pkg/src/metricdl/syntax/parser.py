"""Line-oriented parsing of program and dataset texts, with rule checks."""

from __future__ import annotations

from collections.abc import Iterator

import pyparsing as pp

from metricdl.errors import InvalidIntervalError, ParseError
from metricdl.logging import get_logger
from metricdl.syntax.ast import (
    BINARY_TYPES,
    UNARY_TYPES,
    Bottom,
    BoxMinus,
    BoxPlus,
    Dataset,
    Fact,
    MetricAtom,
    Program,
    Relational,
    Rule,
    Since,
    Top,
    Until,
    Variable,
    atom_variables,
    relational_leaves,
    safe_variables,
    subterms,
)
from metricdl.syntax.grammar import FACT_LINE, METRIC_ATOM, RULE_LINE

__all__ = [
    "ArityTable",
    "check_rule",
    "parse_dataset",
    "parse_fact",
    "parse_metric_atom",
    "parse_program",
    "parse_rule",
]

_logger = get_logger("syntax.parser")


class ArityTable:
    """Predicate arities fixed by their first occurrence.

    One table may be shared between a program and a dataset so that clashes
    across the two texts are reported.
    """

    def __init__(self) -> None:
        self._arities: dict[str, int] = {}

    def __contains__(self, predicate: object) -> bool:
        return predicate in self._arities

    def get(self, predicate: str) -> int | None:
        return self._arities.get(predicate)

    def check(self, atom: Relational, line: int = 0, column: int = 0) -> None:
        known = self._arities.setdefault(atom.predicate, atom.arity)
        if known != atom.arity:
            raise ParseError(
                f"predicate {atom.predicate} used with arity {atom.arity}, previously {known}",
                line,
                column,
            )


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, line


def _column_of(line: str, predicate: str) -> int:
    index = line.find(predicate)
    return index + 1 if index >= 0 else 1


def _parse_line(element: pp.ParserElement, line: str, number: int) -> object:
    try:
        return element.parse_string(line, parse_all=True)[0]
    except pp.ParseException as exc:
        raise ParseError(f"expected {element.name}: {exc.msg}", number, exc.col) from exc
    except InvalidIntervalError as exc:
        raise ParseError(str(exc), number, 1) from exc


def _holds_when_empty(atom: MetricAtom) -> bool:
    """Whether ``atom`` holds everywhere in the interpretation with no facts.

    Without facts every subformula is true everywhere or nowhere, so a
    boolean suffices.
    """
    if isinstance(atom, Top):
        return True
    if isinstance(atom, (Bottom, Relational)):
        return False
    if isinstance(atom, UNARY_TYPES):
        return _holds_when_empty(atom.operand)
    assert isinstance(atom, (Since, Until))
    if not _holds_when_empty(atom.right):
        return False
    if atom.range.contains_point(0):
        return True
    return _holds_when_empty(atom.left)


def _check_head(head: MetricAtom, rule_name: str) -> None:
    if isinstance(head, Bottom):
        return
    atom = head
    while isinstance(atom, (BoxMinus, BoxPlus)):
        atom = atom.operand
    if not isinstance(atom, Relational):
        raise ParseError(f"rule {rule_name}: head may only use BOXMINUS/BOXPLUS over a relational atom or be BOTTOM")


def check_rule(rule: Rule, arities: ArityTable | None = None, line: int = 0, text: str = "") -> None:
    """Validate ranges, head shape, safety, vacuity and arities of ``rule``."""
    name = rule.name or "rule"
    for atom in (rule.head, *rule.body):
        for node in subterms(atom):
            if isinstance(node, (*UNARY_TYPES, *BINARY_TYPES)) and node.range.left < 0:
                raise ParseError(f"rule {name}: negative operator range {node.range}", line, 1)
    _check_head(rule.head, name)
    body_safe: set[str] = set()
    for atom in rule.body:
        body_safe |= safe_variables(atom)
    unsafe = sorted(atom_variables(rule.head) - body_safe)
    if unsafe:
        raise ParseError(
            f"rule {name} is unsafe: head variable {unsafe[0]} does not occur in the body outside a "
            "left operand of SINCE/UNTIL",
            line,
            1,
        )
    if all(_holds_when_empty(atom) for atom in rule.body):
        raise ParseError(f"rule {name} has a vacuously satisfied body; state its head as a fact instead", line, 1)
    if arities is not None:
        for atom in (rule.head, *rule.body):
            for leaf in relational_leaves(atom):
                arities.check(leaf, line, _column_of(text, leaf.predicate))


def parse_rule(text: str, name: str = "r1", arities: ArityTable | None = None, line: int = 1) -> Rule:
    parsed = _parse_line(RULE_LINE, text, line)
    assert isinstance(parsed, Rule)
    rule = parsed if parsed.name else Rule(parsed.head, parsed.body, name)
    check_rule(rule, arities, line, text)
    return rule


def parse_program(text: str, arities: ArityTable | None = None) -> Program:
    """Parse one rule per non-blank, non-comment line.

    Rules without a label are named ``r<k>`` after their 1-based position.
    """
    table = arities if arities is not None else ArityTable()
    rules: list[Rule] = []
    for number, line in _content_lines(text):
        rules.append(parse_rule(line, f"r{len(rules) + 1}", table, number))
    _logger.debug("Parsed %d rules", len(rules))
    return Program(tuple(rules))


def parse_fact(text: str, arities: ArityTable | None = None, line: int = 1) -> Fact:
    parsed = _parse_line(FACT_LINE, text, line)
    assert isinstance(parsed, Fact)
    for arg in parsed.atom.args:
        if isinstance(arg, Variable):
            raise ParseError(f"variable {arg.name} in fact {parsed.atom.predicate}", line, _column_of(text, arg.name))
    if arities is not None:
        arities.check(parsed.atom, line, _column_of(text, parsed.atom.predicate))
    return parsed


def parse_dataset(text: str, arities: ArityTable | None = None) -> Dataset:
    table = arities if arities is not None else ArityTable()
    facts = [parse_fact(line, table, number) for number, line in _content_lines(text)]
    _logger.debug("Parsed %d facts", len(facts))
    return Dataset(tuple(facts))


def parse_metric_atom(text: str) -> MetricAtom:
    parsed = _parse_line(METRIC_ATOM, text, 1)
    return parsed  # type: ignore[return-value]

