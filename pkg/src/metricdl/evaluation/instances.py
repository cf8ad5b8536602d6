"""Rule instances over a store, their delta-relative subset, and derived head facts."""

from __future__ import annotations

from collections.abc import Callable, Collection, Iterator, Sequence
from typing import NamedTuple

from metricdl.evaluation.join import join_intervals
from metricdl.evaluation.metric import bindings, evaluate
from metricdl.store import AtomKey, FactStore
from metricdl.syntax.ast import (
    BoxMinus,
    BoxPlus,
    Constant,
    Fact,
    MetricAtom,
    Relational,
    Rule,
    Variable,
    relational_leaves,
    substitute,
)
from metricdl.temporal import Interval, contains, dilate_future, dilate_past, intersect

__all__ = [
    "InstanceLog",
    "RuleInstance",
    "derive_head",
    "instances",
    "instances_relative",
]


class RuleInstance(NamedTuple):
    """A substitution for a rule plus one maximal interval per body atom."""

    rule: Rule
    binding: tuple[tuple[str, str], ...]  # sorted (variable, constant) pairs
    intervals: tuple[Interval, ...]
    overlap: Interval  # intersection of all body intervals, never empty

    @property
    def substitution(self) -> dict[str, str]:
        return dict(self.binding)

    def body_facts(self) -> tuple[tuple[MetricAtom, Interval], ...]:
        substitution = self.substitution
        return tuple(
            (substitute(atom, substitution), interval) for atom, interval in zip(self.rule.body, self.intervals)
        )


InstanceLog = Callable[[RuleInstance], None]


def _tuples(
    lists: Sequence[Sequence[Interval]],
    fresh: Sequence[Sequence[bool]] | None = None,
) -> Iterator[tuple[tuple[Interval, ...], Interval]]:
    """Interval tuples with a non-empty common part; with ``fresh``, at least one marked entry."""
    chosen: list[Interval] = []

    def walk(index: int, overlap: Interval | None, any_fresh: bool) -> Iterator[tuple[tuple[Interval, ...], Interval]]:
        if index == len(lists):
            if overlap is not None and (fresh is None or any_fresh):
                yield tuple(chosen), overlap
            return
        for position, interval in enumerate(lists[index]):
            narrowed = interval if overlap is None else intersect(overlap, interval)
            if narrowed is None:
                continue
            chosen.append(interval)
            yield from walk(index + 1, narrowed, any_fresh or (fresh is not None and fresh[index][position]))
            chosen.pop()

    if not lists:
        return
    yield from walk(0, None, False)


def _body_lists(rule: Rule, store: FactStore, binding: dict[str, str]) -> list[list[Interval]] | None:
    lists = [evaluate(store, atom, binding) for atom in rule.body]
    if not join_intervals(lists):
        return None
    return lists


def _domain(store: FactStore, domain: Collection[str]) -> Collection[str]:
    return domain if domain else store.constants()


def instances(
    rule: Rule,
    store: FactStore,
    *,
    domain: Collection[str] = (),
    log: InstanceLog | None = None,
) -> Iterator[RuleInstance]:
    """All instances of ``rule`` whose body intervals overlap."""
    for binding in bindings(rule.body, store, _domain(store, domain)):
        lists = _body_lists(rule, store, binding)
        if lists is None:
            continue
        frozen = tuple(sorted(binding.items()))
        for intervals, overlap in _tuples(lists):
            instance = RuleInstance(rule, frozen, intervals, overlap)
            if log is not None:
                log(instance)
            yield instance


def _unify(leaf: Relational, key: AtomKey) -> dict[str, str] | None:
    predicate, args = key
    if leaf.predicate != predicate or len(leaf.args) != len(args):
        return None
    binding: dict[str, str] = {}
    for arg, value in zip(leaf.args, args):
        if isinstance(arg, Constant):
            if arg.name != value:
                return None
        elif binding.setdefault(arg.name, value) != value:
            return None
    return binding


def instances_relative(
    rule: Rule,
    store: FactStore,
    previous: FactStore,
    delta_atoms: Collection[AtomKey],
    *,
    domain: Collection[str] = (),
    log: InstanceLog | None = None,
) -> Iterator[RuleInstance]:
    """Instances of ``rule`` with some body interval not entailed by ``previous``.

    ``previous`` is the store as it was before the step that produced the
    delta, and it stands in for the store minus the delta facts. The two
    tests agree on every instance that matters: if each body interval is
    contained in an interval entailed by ``previous``, that interval was
    already maximal there, so the whole instance was enumerated in an
    earlier step. Removing the coalesced delta facts can only discard more
    of ``previous``, which makes extra instances count as fresh and be
    enumerated again with no new consequences. Only substitutions grounding
    some leaf to an atom in ``delta_atoms`` can qualify.
    """
    delta_predicates = {predicate for predicate, _ in delta_atoms}
    if not rule.body_predicates() & delta_predicates:
        return
    constants = _domain(store, domain)
    leaves = [leaf for atom in rule.body for leaf in relational_leaves(atom) if leaf.predicate in delta_predicates]
    seen: set[tuple[tuple[str, str], ...]] = set()
    for key in delta_atoms:
        for leaf in leaves:
            seed = _unify(leaf, key)
            if seed is None:
                continue
            for binding in bindings(rule.body, store, constants, seed):
                frozen = tuple(sorted(binding.items()))
                if frozen in seen:
                    continue
                seen.add(frozen)
                lists = _body_lists(rule, store, binding)
                if lists is None:
                    continue
                fresh = [
                    [not any(contains(old, interval) for old in evaluate(previous, atom, binding)) for interval in lst]
                    for atom, lst in zip(rule.body, lists)
                ]
                for intervals, overlap in _tuples(lists, fresh):
                    instance = RuleInstance(rule, frozen, intervals, overlap)
                    if log is not None:
                        log(instance)
                    yield instance


def derive_head(instance: RuleInstance) -> Fact | None:
    """The fact the instance forces, or ``None`` for constraint rules."""
    interval: Interval | None = instance.overlap
    head = instance.rule.head
    while isinstance(head, (BoxPlus, BoxMinus)) and interval is not None:
        if isinstance(head, BoxPlus):
            interval = dilate_past(interval, head.range)
        else:
            interval = dilate_future(interval, head.range)
        head = head.operand
    if not isinstance(head, Relational) or interval is None:
        return None
    atom = substitute(head, instance.substitution)
    assert isinstance(atom, Relational)
    if any(isinstance(arg, Variable) for arg in atom.args):
        raise ValueError(f"rule {instance.rule.name} derived a non-ground head")
    return Fact(atom, interval)
