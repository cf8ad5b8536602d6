"""Mutable bookkeeping of one materialisation run and the outcome records it yields."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from metricdl.analysis import nonrecursive_atoms, recursive_predicates
from metricdl.store import AtomKey, FactStore
from metricdl.syntax.ast import Dataset, Fact, MetricAtom, Program, Rule
from metricdl.temporal import TimePoint
from metricdl.types import OutcomeKind

__all__ = ["MaterialisationState", "StepOutcome"]


class StepOutcome(NamedTuple):
    """How a step or a run ended, with the store it ended on."""

    kind: OutcomeKind
    store: FactStore
    step: int
    program: Program  # rules still active when the run ended
    violated: Rule | None = None


@dataclass(slots=True)
class MaterialisationState:
    """Everything a run carries from one step to the next.

    ``previous`` is the store as it was before the step that produced
    ``delta``; ``delta`` holds the stored intervals that gained content in
    that step.
    """

    program: Program
    constraints: Program
    store: FactStore
    previous: FactStore
    domain: frozenset[str]
    recursive: frozenset[str]
    nonrecursive_body: dict[Rule, tuple[MetricAtom, ...]]
    delta: list[Fact] = field(default_factory=list)
    step: int = 0
    flag: bool = False
    horizons: dict[str, TimePoint] = field(default_factory=dict)
    dropped: list[str] = field(default_factory=list)

    @classmethod
    def initial(cls, program: Program, dataset: Dataset | FactStore) -> MaterialisationState:
        store = dataset.snapshot() if isinstance(dataset, FactStore) else FactStore.from_dataset(dataset)
        recursive = recursive_predicates(program)
        derivation = tuple(rule for rule in program if not rule.is_constraint)
        return cls(
            program=Program(derivation),
            constraints=Program(tuple(rule for rule in program if rule.is_constraint)),
            store=store,
            previous=FactStore(),
            domain=program.constants() | store.constants(),
            recursive=recursive,
            nonrecursive_body={rule: nonrecursive_atoms(rule, recursive) for rule in derivation},
            delta=list(store.facts()),
        )

    def delta_atoms(self) -> set[AtomKey]:
        return {(fact.atom.predicate, tuple(arg.name for arg in fact.atom.args)) for fact in self.delta}

    def drop(self, rule: Rule) -> None:
        self.program = Program(tuple(kept for kept in self.program if kept != rule))
        self.dropped.append(rule.name)

    def restore(self, rule: Rule) -> None:
        active = set(self.program.rules) | {rule}
        self.program = Program(tuple(kept for kept in self.nonrecursive_body if kept in active))
        self.dropped.remove(rule.name)
