"""Coalesced temporal fact store with predicate and argument indexes."""

from __future__ import annotations

from bisect import bisect_right
from collections.abc import Iterable, Iterator, Mapping
from typing import NamedTuple

from metricdl.syntax.ast import Constant, Dataset, Fact, Relational, Variable
from metricdl.syntax.printer import format_fact
from metricdl.temporal import Interval, coalesce_pair, contains, union_compatible

__all__ = ["AtomKey", "FactStore", "InsertOutcome", "atom_key"]

AtomKey = tuple[str, tuple[str, ...]]


class InsertOutcome(NamedTuple):
    """Result of inserting one fact."""

    added: bool  # False when a stored interval already contained the fact
    container: Interval  # stored interval covering the fact afterwards


def atom_key(atom: Relational) -> AtomKey:
    args: list[str] = []
    for arg in atom.args:
        if isinstance(arg, Variable):
            raise ValueError(f"atom {atom.predicate} is not ground")
        args.append(arg.name)
    return (atom.predicate, tuple(args))


def _start_key(interval: Interval) -> tuple:
    return interval.start_key


class FactStore:
    """Facts grouped per ground atom as sorted, pairwise non-adjacent interval lists.

    Every list is kept fully coalesced on insertion, so a fact is entailed iff
    a single stored interval contains it. Indexes by predicate and by
    ``(predicate, position, constant)`` support joins; both are insertion
    ordered so enumeration is deterministic.
    """

    __slots__ = ("_by_argument", "_by_atom", "_by_predicate", "memo", "version")

    def __init__(self) -> None:
        self._by_atom: dict[AtomKey, list[Interval]] = {}
        self._by_predicate: dict[str, dict[tuple[str, ...], None]] = {}
        self._by_argument: dict[tuple[str, int, str], dict[tuple[str, ...], None]] = {}
        self.memo: dict[object, list[Interval]] = {}
        self.version = 0

    @classmethod
    def from_facts(cls, facts: Iterable[Fact]) -> FactStore:
        store = cls()
        for fact in facts:
            store.insert(fact)
        return store

    @classmethod
    def from_dataset(cls, dataset: Dataset) -> FactStore:
        return cls.from_facts(dataset.facts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactStore):
            return NotImplemented
        return self._content() == other._content()

    def _content(self) -> dict[AtomKey, list[Interval]]:
        return {key: intervals for key, intervals in self._by_atom.items() if intervals}

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return self.size()

    def __repr__(self) -> str:
        return f"FactStore(atoms={len(self._by_atom)}, facts={self.size()})"

    def _index(self, key: AtomKey) -> None:
        predicate, args = key
        self._by_predicate.setdefault(predicate, {})[args] = None
        for position, constant in enumerate(args):
            self._by_argument.setdefault((predicate, position, constant), {})[args] = None

    def insert(self, fact: Fact) -> InsertOutcome:
        return self.insert_interval(atom_key(fact.atom), fact.interval)

    def insert_interval(self, key: AtomKey, interval: Interval) -> InsertOutcome:
        intervals = self._by_atom.get(key)
        if intervals is None:
            self._by_atom[key] = [interval]
            self._index(key)
            self._changed()
            return InsertOutcome(True, interval)

        position = bisect_right(intervals, interval.start_key, key=_start_key)
        if position > 0 and contains(intervals[position - 1], interval):
            return InsertOutcome(False, intervals[position - 1])

        low = position
        merged = interval
        if position > 0 and union_compatible(intervals[position - 1], interval):
            low = position - 1
            merged = coalesce_pair(intervals[low], merged)
        high = position
        while high < len(intervals) and union_compatible(merged, intervals[high]):
            merged = coalesce_pair(merged, intervals[high])
            high += 1
        intervals[low:high] = [merged]
        self._changed()
        return InsertOutcome(True, merged)

    def _changed(self) -> None:
        self.version += 1
        if self.memo:
            self.memo.clear()

    def intervals(self, key: AtomKey) -> list[Interval]:
        """Stored maximal intervals of ``key`` (shared list, do not mutate)."""
        return self._by_atom.get(key, [])

    def maximal_intervals(self, atom: Relational) -> list[Interval]:
        return list(self.intervals(atom_key(atom)))

    def container(self, key: AtomKey, interval: Interval) -> Interval | None:
        """The stored interval containing ``interval``, if there is one."""
        intervals = self._by_atom.get(key)
        if not intervals:
            return None
        position = bisect_right(intervals, interval.start_key, key=_start_key)
        if position > 0 and contains(intervals[position - 1], interval):
            return intervals[position - 1]
        return None

    def entails(self, fact: Fact) -> bool:
        return self.container(atom_key(fact.atom), fact.interval) is not None

    def candidates(self, atom: Relational, binding: Mapping[str, str]) -> Iterable[tuple[str, ...]]:
        """Argument tuples of ``atom.predicate`` compatible with the bound positions."""
        best: Iterable[tuple[str, ...]] | None = None
        best_size = -1
        for position, arg in enumerate(atom.args):
            value = arg.name if isinstance(arg, Constant) else binding.get(arg.name)
            if value is None:
                continue
            indexed = self._by_argument.get((atom.predicate, position, value))
            if indexed is None:
                return ()
            if best_size < 0 or len(indexed) < best_size:
                best, best_size = indexed, len(indexed)
        if best is None:
            return self._by_predicate.get(atom.predicate, {})
        return best

    def candidate_count(self, atom: Relational, binding: Mapping[str, str]) -> int:
        candidates = self.candidates(atom, binding)
        return len(candidates) if isinstance(candidates, (dict, tuple)) else sum(1 for _ in candidates)

    def match_pattern(
        self, atom: Relational, binding: Mapping[str, str]
    ) -> Iterator[tuple[dict[str, str], list[Interval]]]:
        """Extensions of ``binding`` that ground ``atom`` to a stored atom."""
        for args in list(self.candidates(atom, binding)):
            extended = dict(binding)
            for arg, value in zip(atom.args, args):
                if isinstance(arg, Constant):
                    if arg.name != value:
                        break
                elif extended.setdefault(arg.name, value) != value:
                    break
            else:
                intervals = self._by_atom[(atom.predicate, args)]
                if intervals:
                    yield extended, intervals

    def keys(self) -> Iterator[AtomKey]:
        return iter(self._by_atom)

    def atoms(self) -> list[Relational]:
        return [
            Relational(predicate, tuple(Constant(arg) for arg in args)) for predicate, args in sorted(self._content())
        ]

    def facts(self) -> Iterator[Fact]:
        """Stored facts in canonical order: atoms sorted, intervals in list order."""
        for predicate, args in sorted(self._by_atom):
            atom = Relational(predicate, tuple(Constant(arg) for arg in args))
            for interval in self._by_atom[(predicate, args)]:
                yield Fact(atom, interval)

    def items(self) -> Iterator[tuple[AtomKey, list[Interval]]]:
        return iter(self._by_atom.items())

    def predicates(self) -> frozenset[str]:
        return frozenset(self._by_predicate)

    def constants(self) -> frozenset[str]:
        return frozenset(arg for _, args in self._content() for arg in args)

    def size(self) -> int:
        return sum(len(intervals) for intervals in self._by_atom.values())

    def snapshot(self) -> FactStore:
        copy = FactStore()
        copy._by_atom = {key: list(intervals) for key, intervals in self._by_atom.items()}
        copy._by_predicate = {predicate: dict(args) for predicate, args in self._by_predicate.items()}
        copy._by_argument = {key: dict(args) for key, args in self._by_argument.items()}
        copy.version = self.version
        return copy

    def without(self, delta: Iterable[Fact]) -> FactStore:
        """The store as a dataset minus the exact facts in ``delta``."""
        copy = self.snapshot()
        for fact in delta:
            key = atom_key(fact.atom)
            intervals = copy._by_atom.get(key)
            if intervals and fact.interval in intervals:
                intervals.remove(fact.interval)
        return copy

    def restricted_to(self, predicates: Iterable[str]) -> FactStore:
        wanted = set(predicates)
        copy = FactStore()
        for key, intervals in self._by_atom.items():
            if key[0] in wanted:
                copy._by_atom[key] = list(intervals)
                copy._index(key)
        return copy

    def to_dataset(self) -> Dataset:
        return Dataset(tuple(self.facts()))

    def dump(self) -> str:
        return "".join(f"{format_fact(fact)}\n" for fact in self.facts())
