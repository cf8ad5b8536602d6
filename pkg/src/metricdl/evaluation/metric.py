"""Maximal intervals on which a metric atom holds over a fact store."""

from __future__ import annotations

from collections.abc import Collection, Iterator, Mapping, Sequence
from itertools import product

from metricdl.store import FactStore, atom_key
from metricdl.syntax.ast import (
    Bottom,
    BoxMinus,
    BoxPlus,
    DiamondMinus,
    DiamondPlus,
    MetricAtom,
    Relational,
    Since,
    Top,
    Until,
    Variable,
    atom_variables,
    binding_leaves,
    substitute,
)
from metricdl.temporal import (
    ALWAYS,
    NEG_INF,
    POS_INF,
    Interval,
    TimePoint,
    coalesce_all,
    dilate_future,
    dilate_past,
    erode_future,
    erode_past,
    intersect,
    is_finite,
)

__all__ = [
    "bindings",
    "evaluate",
    "is_satisfiable",
    "max_right_endpoint",
    "min_left_endpoint",
]

_POSITIVE = Interval(0, POS_INF, False, False)


def _closure(interval: Interval) -> Interval:
    return Interval(interval.left, interval.right, is_finite(interval.left), is_finite(interval.right))


def _since(rng: Interval, left: Sequence[Interval], right: Sequence[Interval]) -> list[Interval]:
    pieces: list[Interval] = list(right) if rng.contains_point(0) else []
    positive = intersect(rng, _POSITIVE)
    if positive is not None:
        for span in left:
            cutoff = Interval(NEG_INF, span.right, False, is_finite(span.right))
            closed = _closure(span)
            for witness in right:
                start = intersect(witness, closed)
                if start is None:
                    continue
                shifted = dilate_past(start, positive)
                if shifted is not None and (piece := intersect(shifted, cutoff)) is not None:
                    pieces.append(piece)
    return coalesce_all(pieces)


def _until(rng: Interval, left: Sequence[Interval], right: Sequence[Interval]) -> list[Interval]:
    pieces: list[Interval] = list(right) if rng.contains_point(0) else []
    positive = intersect(rng, _POSITIVE)
    if positive is not None:
        for span in left:
            cutoff = Interval(span.left, POS_INF, is_finite(span.left), False)
            closed = _closure(span)
            for witness in right:
                end = intersect(witness, closed)
                if end is None:
                    continue
                shifted = dilate_future(end, positive)
                if shifted is not None and (piece := intersect(shifted, cutoff)) is not None:
                    pieces.append(piece)
    return coalesce_all(pieces)


def _evaluate_ground(store: FactStore, atom: MetricAtom) -> list[Interval]:
    if isinstance(atom, Relational):
        return store.intervals(atom_key(atom))
    if isinstance(atom, Top):
        return [ALWAYS]
    if isinstance(atom, Bottom):
        return []

    cached = store.memo.get(atom)
    if cached is not None:
        return cached

    match atom:
        case DiamondMinus(rng, operand):
            result = coalesce_all(
                d for i in _evaluate_ground(store, operand) if (d := dilate_past(i, rng)) is not None
            )
        case DiamondPlus(rng, operand):
            result = coalesce_all(
                d for i in _evaluate_ground(store, operand) if (d := dilate_future(i, rng)) is not None
            )
        case BoxMinus(rng, operand):
            result = coalesce_all(e for i in _evaluate_ground(store, operand) if (e := erode_past(i, rng)) is not None)
        case BoxPlus(rng, operand):
            result = coalesce_all(
                e for i in _evaluate_ground(store, operand) if (e := erode_future(i, rng)) is not None
            )
        case Since(rng, left, right):
            result = _since(rng, _evaluate_ground(store, left), _evaluate_ground(store, right))
        case Until(rng, left, right):
            result = _until(rng, _evaluate_ground(store, left), _evaluate_ground(store, right))
        case _:
            raise TypeError(f"not a metric atom: {atom!r}")
    store.memo[atom] = result
    return result


def evaluate(store: FactStore, atom: MetricAtom, binding: Mapping[str, str] | None = None) -> list[Interval]:
    """Sorted maximal intervals on which ``atom`` under ``binding`` holds in ``store``.

    Every variable of ``atom`` must be bound. The returned list may be shared
    with the store and must not be mutated.
    """
    ground = substitute(atom, binding) if binding else atom
    unbound = atom_variables(ground)
    if unbound:
        raise ValueError(f"unbound variables {sorted(unbound)} in evaluated atom")
    return _evaluate_ground(store, ground)


def bindings(
    atoms: Sequence[MetricAtom],
    store: FactStore,
    domain: Collection[str],
    seed: Mapping[str, str] | None = None,
) -> Iterator[dict[str, str]]:
    """Substitutions for all variables of ``atoms`` that can make each of them hold.

    Relational leaves outside left operands of since/until must match stored
    atoms; they are joined cheapest first. Remaining variables range over
    ``domain``.
    """
    start = dict(seed or {})
    leaves = [leaf for atom in atoms for leaf in binding_leaves(atom)]
    leaves.sort(key=lambda leaf: store.candidate_count(leaf, start))
    variables = sorted({name for atom in atoms for name in atom_variables(atom)})
    ordered_domain = sorted(domain)

    def extend(index: int, current: dict[str, str]) -> Iterator[dict[str, str]]:
        if index == len(leaves):
            free = [name for name in variables if name not in current]
            if not free:
                yield current
                return
            for values in product(ordered_domain, repeat=len(free)):
                yield {**current, **dict(zip(free, values))}
            return
        leaf = leaves[index]
        if all(not isinstance(arg, Variable) or arg.name in current for arg in leaf.args):
            if store.intervals(atom_key(substitute(leaf, current))):  # type: ignore[arg-type]
                yield from extend(index + 1, current)
            return
        for extended, _ in store.match_pattern(leaf, current):
            yield from extend(index + 1, extended)

    yield from extend(0, start)


def is_satisfiable(store: FactStore, atom: MetricAtom, domain: Collection[str] = ()) -> bool:
    """Whether ``atom`` holds somewhere under some substitution."""
    constants = domain or store.constants()
    return any(evaluate(store, atom, binding) for binding in bindings([atom], store, constants))


def max_right_endpoint(store: FactStore, atom: MetricAtom, domain: Collection[str] = ()) -> TimePoint | None:
    """Supremum of the time points where ``atom`` holds, or ``None`` if it never does."""
    constants = domain or store.constants()
    best: TimePoint | None = None
    for binding in bindings([atom], store, constants):
        intervals = evaluate(store, atom, binding)
        if intervals and (best is None or intervals[-1].right > best):
            best = intervals[-1].right
    return best


def min_left_endpoint(store: FactStore, atom: MetricAtom, domain: Collection[str] = ()) -> TimePoint | None:
    constants = domain or store.constants()
    best: TimePoint | None = None
    for binding in bindings([atom], store, constants):
        intervals = evaluate(store, atom, binding)
        if intervals and (best is None or intervals[0].left < best):
            best = intervals[0].left
    return best
