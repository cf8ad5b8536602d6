"""Seeded generators of small random programs and datasets."""

from __future__ import annotations

import random
from fractions import Fraction

from metricdl.syntax import (
    BOTTOM,
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
    Until,
    Variable,
)
from metricdl.syntax.ast import subterms
from metricdl.temporal import POS_INF, Interval

PREDICATES = ("P", "Q", "R", "S")
CONSTANTS = ("a", "b")

_PAST_UNARY = (DiamondMinus, BoxMinus)
_FUTURE_UNARY = (DiamondPlus, BoxPlus)
TEMPORAL_OPERATORS = (*_PAST_UNARY, *_FUTURE_UNARY, Since, Until)


def random_range(rng: random.Random, *, unbounded: bool = False) -> Interval:
    left = Fraction(rng.randint(0, 2))
    if unbounded and rng.random() < 0.15:
        return Interval(left, POS_INF, rng.random() < 0.7, False)
    right = left + Fraction(rng.randint(0, 2))
    if left == right:
        return Interval(left, right)
    return Interval(left, right, rng.random() < 0.7, rng.random() < 0.7)


def random_leaf(rng: random.Random, predicates: tuple[str, ...] = PREDICATES) -> Relational:
    return Relational(rng.choice(predicates), (Variable("X"),))


def random_body_atom(
    rng: random.Random,
    depth: int,
    *,
    forward_only: bool = False,
    unbounded: bool = False,
    predicates: tuple[str, ...] = PREDICATES,
) -> MetricAtom:
    """A body atom whose binding leaves always mention ``X``."""
    if depth == 0 or rng.random() < 0.35:
        return random_leaf(rng, predicates)
    kinds = ["past", "binary"] if forward_only else ["past", "future", "binary"]
    kind = rng.choice(kinds)
    child = random_body_atom(rng, depth - 1, forward_only=forward_only, unbounded=unbounded, predicates=predicates)
    if kind == "past":
        return rng.choice(_PAST_UNARY)(random_range(rng, unbounded=unbounded), child)
    if kind == "future":
        return rng.choice(_FUTURE_UNARY)(random_range(rng, unbounded=unbounded), child)
    other = random_body_atom(rng, depth - 1, forward_only=forward_only, unbounded=unbounded, predicates=predicates)
    operator = Since if forward_only or rng.random() < 0.5 else Until
    return operator(random_range(rng, unbounded=unbounded), other, child)


def random_head(
    rng: random.Random, *, forward_only: bool = False, predicates: tuple[str, ...] = PREDICATES
) -> MetricAtom:
    atom: MetricAtom = random_leaf(rng, predicates)
    roll = rng.random()
    if roll < 0.2:
        atom = BoxPlus(random_range(rng), atom)
    elif roll < 0.3 and not forward_only:
        atom = BoxMinus(random_range(rng), atom)
    return atom


def random_program(
    rng: random.Random,
    *,
    rules: int = 3,
    depth: int = 2,
    forward_only: bool = False,
    unbounded: bool = False,
    constraints: bool = False,
    predicates: tuple[str, ...] = PREDICATES,
) -> Program:
    built: list[Rule] = []
    for index in range(rules):
        body = tuple(
            random_body_atom(rng, depth, forward_only=forward_only, unbounded=unbounded, predicates=predicates)
            for _ in range(rng.randint(1, 2))
        )
        head = random_head(rng, forward_only=forward_only, predicates=predicates)
        built.append(Rule(head, body, f"r{index + 1}"))
    if constraints and rng.random() < 0.5:
        built.append(Rule(BOTTOM, (random_leaf(rng, predicates), random_leaf(rng, predicates)), f"r{rules + 1}"))
    return Program(tuple(built))


def random_dataset(
    rng: random.Random,
    *,
    facts: int = 4,
    predicates: tuple[str, ...] = PREDICATES,
    halves: bool = False,
) -> Dataset:
    built: list[Fact] = []
    denominator = 2 if halves else 1
    for _ in range(facts):
        left = Fraction(rng.randint(0, 6), denominator)
        right = left + Fraction(rng.randint(0, 3), denominator)
        if left == right:
            interval = Interval(left, right)
        else:
            interval = Interval(left, right, rng.random() < 0.7, rng.random() < 0.7)
        built.append(Fact(Relational(rng.choice(predicates), (Constant(rng.choice(CONSTANTS)),)), interval))
    return Dataset(tuple(built))


def operator_types(program: Program) -> set[type]:
    """Temporal operator classes occurring anywhere in ``program``."""
    found: set[type] = set()
    for rule in program:
        for atom in (rule.head, *rule.body):
            found |= {type(node) for node in subterms(atom) if isinstance(node, TEMPORAL_OPERATORS)}
    return found


def with_constraint(rng: random.Random, program: Program, predicates: tuple[str, ...] = PREDICATES) -> Program:
    """``program`` plus a constraint over two random predicates, unless it has one already."""
    if any(rule.is_constraint for rule in program):
        return program
    constraint = Rule(BOTTOM, (random_leaf(rng, predicates), random_leaf(rng, predicates)), f"r{len(program) + 1}")
    return Program((*program.rules, constraint))
