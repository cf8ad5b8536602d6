"""Immutable syntax tree for programs, facts and datasets."""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import Union

from metricdl.temporal import Interval

__all__ = [
    "BINARY_TYPES",
    "BOTTOM",
    "TOP",
    "BoxMinus",
    "BoxPlus",
    "Bottom",
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
    "UNARY_TYPES",
    "UnaryAtom",
    "Until",
    "Variable",
    "atom_constants",
    "atom_predicates",
    "atom_variables",
    "binding_leaves",
    "is_ground",
    "relational_leaves",
    "safe_variables",
    "substitute",
    "subterms",
]


@dataclass(frozen=True, slots=True)
class Constant:
    name: str


@dataclass(frozen=True, slots=True)
class Variable:
    name: str


Term = Union[Constant, Variable]


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Bottom:
    pass


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True, slots=True)
class Relational:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)


@dataclass(frozen=True, slots=True)
class DiamondMinus:
    """Holds if the operand held at some point of ``range`` in the past."""

    range: Interval
    operand: MetricAtom


@dataclass(frozen=True, slots=True)
class DiamondPlus:
    """Holds if the operand holds at some point of ``range`` in the future."""

    range: Interval
    operand: MetricAtom


@dataclass(frozen=True, slots=True)
class BoxMinus:
    """Holds if the operand held throughout ``range`` in the past."""

    range: Interval
    operand: MetricAtom


@dataclass(frozen=True, slots=True)
class BoxPlus:
    """Holds if the operand holds throughout ``range`` in the future."""

    range: Interval
    operand: MetricAtom


@dataclass(frozen=True, slots=True)
class Since:
    """``right`` held at some past point within ``range`` and ``left`` held ever since."""

    range: Interval
    left: MetricAtom
    right: MetricAtom


@dataclass(frozen=True, slots=True)
class Until:
    """``right`` holds at some future point within ``range`` and ``left`` holds until then."""

    range: Interval
    left: MetricAtom
    right: MetricAtom


UnaryAtom = Union[DiamondMinus, DiamondPlus, BoxMinus, BoxPlus]
MetricAtom = Union[Top, Bottom, Relational, DiamondMinus, DiamondPlus, BoxMinus, BoxPlus, Since, Until]

UNARY_TYPES = (DiamondMinus, DiamondPlus, BoxMinus, BoxPlus)
BINARY_TYPES = (Since, Until)


@dataclass(frozen=True, slots=True)
class Rule:
    head: MetricAtom
    body: tuple[MetricAtom, ...]
    name: str = field(default="", compare=False)

    @property
    def is_constraint(self) -> bool:
        return isinstance(self.head, Bottom)

    @property
    def head_atom(self) -> Relational | None:
        """The relational atom under the head's box operators, if any."""
        atom = self.head
        while isinstance(atom, (BoxMinus, BoxPlus)):
            atom = atom.operand
        return atom if isinstance(atom, Relational) else None

    @property
    def head_predicate(self) -> str | None:
        atom = self.head_atom
        return atom.predicate if atom is not None else None

    def variables(self) -> frozenset[str]:
        names = set(atom_variables(self.head))
        for atom in self.body:
            names |= atom_variables(atom)
        return frozenset(names)

    def body_predicates(self) -> frozenset[str]:
        return frozenset(p for atom in self.body for p in atom_predicates(atom))


@dataclass(frozen=True, slots=True)
class Program:
    rules: tuple[Rule, ...] = ()

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def predicates(self) -> frozenset[str]:
        names: set[str] = set()
        for rule in self.rules:
            names |= atom_predicates(rule.head)
            names |= rule.body_predicates()
        return frozenset(names)

    def constants(self) -> frozenset[str]:
        names: set[str] = set()
        for rule in self.rules:
            names |= atom_constants(rule.head)
            for atom in rule.body:
                names |= atom_constants(atom)
        return frozenset(names)

    def rule(self, name: str) -> Rule:
        for rule in self.rules:
            if rule.name == name:
                return rule
        raise KeyError(name)

    def subset(self, names: frozenset[str] | set[str]) -> Program:
        return Program(tuple(rule for rule in self.rules if rule.name in names))


@dataclass(frozen=True, slots=True)
class Fact:
    atom: Relational
    interval: Interval


@dataclass(frozen=True, slots=True)
class Dataset:
    facts: tuple[Fact, ...] = ()

    def __iter__(self) -> Iterator[Fact]:
        return iter(self.facts)

    def __len__(self) -> int:
        return len(self.facts)

    def constants(self) -> frozenset[str]:
        return frozenset(arg.name for fact in self.facts for arg in fact.atom.args)

    def predicates(self) -> frozenset[str]:
        return frozenset(fact.atom.predicate for fact in self.facts)

    def restricted_to(self, predicates: frozenset[str] | set[str]) -> Dataset:
        return Dataset(tuple(fact for fact in self.facts if fact.atom.predicate in predicates))


def subterms(atom: MetricAtom) -> Iterator[MetricAtom]:
    """Pre-order walk over ``atom`` and all nested metric atoms."""
    yield atom
    if isinstance(atom, UNARY_TYPES):
        yield from subterms(atom.operand)
    elif isinstance(atom, BINARY_TYPES):
        yield from subterms(atom.left)
        yield from subterms(atom.right)


def relational_leaves(atom: MetricAtom) -> Iterator[Relational]:
    for node in subterms(atom):
        if isinstance(node, Relational):
            yield node


def binding_leaves(atom: MetricAtom) -> Iterator[Relational]:
    """Relational leaves that are not inside a left operand of since/until."""
    if isinstance(atom, Relational):
        yield atom
    elif isinstance(atom, UNARY_TYPES):
        yield from binding_leaves(atom.operand)
    elif isinstance(atom, BINARY_TYPES):
        yield from binding_leaves(atom.right)


def atom_variables(atom: MetricAtom) -> frozenset[str]:
    return frozenset(arg.name for leaf in relational_leaves(atom) for arg in leaf.args if isinstance(arg, Variable))


def atom_constants(atom: MetricAtom) -> frozenset[str]:
    return frozenset(arg.name for leaf in relational_leaves(atom) for arg in leaf.args if isinstance(arg, Constant))


def atom_predicates(atom: MetricAtom) -> frozenset[str]:
    return frozenset(leaf.predicate for leaf in relational_leaves(atom))


def safe_variables(atom: MetricAtom) -> frozenset[str]:
    return frozenset(arg.name for leaf in binding_leaves(atom) for arg in leaf.args if isinstance(arg, Variable))


def is_ground(atom: MetricAtom) -> bool:
    return not atom_variables(atom)


def substitute(atom: MetricAtom, binding: Mapping[str, str]) -> MetricAtom:
    """Replace bound variables by constants; unbound variables stay."""
    if isinstance(atom, Relational):
        if not atom.args:
            return atom
        return Relational(
            atom.predicate,
            tuple(
                Constant(binding[arg.name]) if isinstance(arg, Variable) and arg.name in binding else arg
                for arg in atom.args
            ),
        )
    if isinstance(atom, UNARY_TYPES):
        return type(atom)(atom.range, substitute(atom.operand, binding))
    if isinstance(atom, BINARY_TYPES):
        return type(atom)(atom.range, substitute(atom.left, binding), substitute(atom.right, binding))
    return atom
