"""Naive, semi-naive and optimised semi-naive materialisation."""

from __future__ import annotations

import threading
import time
import tracemalloc
from collections.abc import Iterable, Iterator

from metricdl.analysis import propagation_class
from metricdl.errors import ReasoningCancelledError
from metricdl.evaluation import (
    InstanceLog,
    RuleInstance,
    derive_head,
    instances,
    instances_relative,
    is_satisfiable,
    max_right_endpoint,
    min_left_endpoint,
)
from metricdl.logging import get_logger
from metricdl.materialise.state import MaterialisationState, StepOutcome
from metricdl.materialise.trace import StepRecord, TraceSink
from metricdl.store import AtomKey, FactStore, atom_key
from metricdl.syntax.ast import Constant, Dataset, Fact, MetricAtom, Program, Relational, Rule
from metricdl.temporal import Interval, TimePoint, restrict_left, restrict_right
from metricdl.types import MaterialisationMode, OutcomeKind, PropagationClass

__all__ = [
    "DEFAULT_MAX_STEPS",
    "Materialiser",
    "check_bottom_rules",
    "materialise",
    "materialise_halt",
]

_logger = get_logger("materialise.runner")

DEFAULT_MAX_STEPS = 10_000


def check_bottom_rules(program: Program, store: FactStore, *, domain: Iterable[str] = ()) -> Rule | None:
    """The first constraint rule whose body holds somewhere in ``store``."""
    constants = frozenset(domain) | program.constants() | store.constants()
    for rule in program:
        if rule.is_constraint and next(iter(instances(rule, store, domain=constants)), None) is not None:
            return rule
    return None


class Materialiser:
    """Runs one materialisation of ``program`` over ``dataset`` step by step.

    Every mode yields the same store after each step; they differ in how many
    rule instances they enumerate. The optimised mode additionally drops rules
    that can no longer contribute, and with ``halt`` it stops as soon as all
    non-recursive predicates are complete.
    """

    def __init__(
        self,
        program: Program,
        dataset: Dataset | FactStore,
        query: Fact | None = None,
        *,
        mode: MaterialisationMode = MaterialisationMode.OPTIMISED,
        drop_rules: bool = True,
        halt: bool = False,
        trace: TraceSink | None = None,
        track_memory: bool = False,
        log: InstanceLog | None = None,
        cancel: threading.Event | None = None,
    ) -> None:
        mode = MaterialisationMode(mode)
        if halt and mode is not MaterialisationMode.OPTIMISED:
            raise ValueError("halting is only defined for optimised materialisation")
        self.state = MaterialisationState.initial(program, dataset)
        self.query = query
        self.mode = mode
        self.drop_rules = drop_rules
        self.halt = halt
        self._trace = trace
        self._track_memory = track_memory
        self._log = log
        self._cancel = cancel
        self.instance_count = 0

    @property
    def store(self) -> FactStore:
        return self.state.store

    def _check_cancelled(self) -> None:
        if self._cancel is not None and self._cancel.is_set():
            raise ReasoningCancelledError(f"materialisation cancelled at step {self.state.step}")

    def _enumerate(self, rule: Rule, delta_atoms: set[AtomKey]) -> Iterator[RuleInstance]:
        state = self.state
        if self.mode is MaterialisationMode.NAIVE:
            return instances(rule, state.store, domain=state.domain, log=self._log)
        return instances_relative(rule, state.store, state.previous, delta_atoms, domain=state.domain, log=self._log)

    def _violation(self, before: FactStore, changed: set[AtomKey]) -> Rule | None:
        state = self.state
        if state.step == 0 or self.mode is MaterialisationMode.NAIVE:
            return check_bottom_rules(state.constraints, state.store, domain=state.domain)
        for rule in state.constraints:
            relative = instances_relative(rule, state.store, before, changed, domain=state.domain)
            if next(iter(relative), None) is not None:
                return rule
        return None

    def step(self) -> StepOutcome:
        """Apply the rules once, then check constraints, the query and the fixpoint in that order."""
        self._check_cancelled()
        state = self.state
        started = time.perf_counter()
        if self._track_memory and tracemalloc.is_tracing():
            tracemalloc.reset_peak()

        delta_atoms = state.delta_atoms()
        derived: list[tuple[Rule, Fact]] = []
        considered = 0
        for rule in state.program:
            self._check_cancelled()
            for instance in self._enumerate(rule, delta_atoms):
                considered += 1
                fact = derive_head(instance)
                if fact is not None:
                    derived.append((rule, fact))
        self.instance_count += considered

        before = state.store.snapshot()
        added: list[tuple[AtomKey, Interval]] = []
        nonrecursive_changed = False
        for _, fact in derived:
            key = atom_key(fact.atom)
            if state.store.insert_interval(key, fact.interval).added:
                added.append((key, fact.interval))
                nonrecursive_changed |= key[0] not in state.recursive
        delta = self._delta(added)

        violated = self._violation(before, {key for key, _ in added})
        state.step += 1
        kind = OutcomeKind.CONTINUE
        if violated is not None:
            kind = OutcomeKind.INCONSISTENT
        elif self.query is not None and state.store.entails(self.query):
            kind = OutcomeKind.ENTAILED
        elif not delta:
            kind = OutcomeKind.FIXPOINT

        dropped_before = len(state.dropped)
        active = state.program
        ended_on = state.store
        if kind is OutcomeKind.CONTINUE and self.mode is MaterialisationMode.OPTIMISED:
            self._optimise(before, delta, nonrecursive_changed)
            if self.halt and state.flag:
                kind = OutcomeKind.HALTED
                ended_on = before
                self._restore_contributors(before, derived, active)

        state.previous = before
        state.delta = delta
        peak = None
        if self._track_memory and tracemalloc.is_tracing():
            peak = tracemalloc.get_traced_memory()[1] // 1024
        record = StepRecord(
            step=state.step,
            mode=str(self.mode),
            instances=considered,
            derived=len(derived),
            inserted=len(added),
            delta=len(delta),
            dropped=tuple(state.dropped[dropped_before:]),
            elapsed=time.perf_counter() - started,
            peak_kib=peak,
        )
        _logger.debug(
            "Step %d (%s): %d instances, %d derived, %d inserted, dropped %s",
            record.step,
            record.mode,
            record.instances,
            record.derived,
            record.inserted,
            list(record.dropped),
        )
        if self._trace is not None:
            self._trace(record)
        return StepOutcome(kind, ended_on, state.step, state.program, violated)

    def _restore_contributors(self, before: FactStore, derived: list[tuple[Rule, Fact]], active: Program) -> None:
        """Re-add rules dropped in the halting step whose derivations ``before`` lacks.

        Drops are justified against the post-step store; the halted run resumes
        from ``before``, where those derivations would otherwise be lost.
        """
        state = self.state
        dropped = set(active.rules) - set(state.program.rules)
        contributors = {rule for rule, fact in derived if rule in dropped and not before.entails(fact)}
        for rule in contributors:
            state.restore(rule)
            _logger.debug("Kept rule %s: it derived new facts in the halting step", rule.name)

    def _delta(self, added: list[tuple[AtomKey, Interval]]) -> list[Fact]:
        """Stored intervals that cover the content added in this step."""
        containers: dict[tuple[AtomKey, Interval], None] = {}
        for key, interval in added:
            container = self.state.store.container(key, interval)
            assert container is not None
            containers[(key, container)] = None
        return [
            Fact(Relational(predicate, tuple(Constant(arg) for arg in args)), container)
            for (predicate, args), container in containers
        ]

    def _optimise(self, before: FactStore, delta: list[Fact], nonrecursive_changed: bool) -> None:
        state = self.state
        if not state.flag and not nonrecursive_changed:
            state.flag = True
            _logger.debug("Non-recursive predicates complete after step %d", state.step)
            for rule in list(state.program):
                if rule.head_predicate not in state.recursive:
                    self._drop(rule)
                elif any(not is_satisfiable(state.store, atom, state.domain) for atom in state.nonrecursive_body[rule]):
                    self._drop(rule)
        if not state.flag:
            return

        recursive_rules = [rule for rule in state.program if rule.head_predicate in state.recursive]
        direction = propagation_class(Program(tuple(recursive_rules)))
        if direction is PropagationClass.MIXED:
            return
        for rule in recursive_rules:
            horizon = self._horizon(state.nonrecursive_body[rule], direction)
            if horizon is None:
                continue
            state.horizons[rule.name] = horizon
            if self._settled_up_to(before, delta, horizon, direction):
                self._drop(rule)

    def _horizon(self, atoms: Iterable[MetricAtom], direction: PropagationClass) -> TimePoint | None:
        """Latest (forward) or earliest (backward) point at which all of ``atoms`` can still hold."""
        state = self.state
        endpoints: list[TimePoint] = []
        for atom in atoms:
            if direction is PropagationClass.FORWARD:
                point = max_right_endpoint(state.store, atom, state.domain)
            else:
                point = min_left_endpoint(state.store, atom, state.domain)
            if point is None:
                return None
            endpoints.append(point)
        if not endpoints:
            return None
        return min(endpoints) if direction is PropagationClass.FORWARD else max(endpoints)

    @staticmethod
    def _settled_up_to(
        before: FactStore, delta: list[Fact], horizon: TimePoint, direction: PropagationClass
    ) -> bool:
        """Whether the step added nothing on the horizon's side of the timeline.

        Only delta intervals differ between ``before`` and the current store.
        """
        for fact in delta:
            if direction is PropagationClass.FORWARD:
                part = restrict_right(fact.interval, horizon)
            else:
                part = restrict_left(fact.interval, horizon)
            if part is not None and before.container(atom_key(fact.atom), part) is None:
                return False
        return True

    def _drop(self, rule: Rule) -> None:
        if not self.drop_rules:
            return
        self.state.drop(rule)
        _logger.debug("Dropped rule %s after step %d", rule.name or "<unnamed>", self.state.step)

    def run(self, max_steps: int | None = DEFAULT_MAX_STEPS) -> StepOutcome:
        """Step until a terminal outcome or ``max_steps`` steps (``None`` for no limit)."""
        start_tracing = self._track_memory and not tracemalloc.is_tracing()
        if start_tracing:
            tracemalloc.start()
        try:
            while True:
                outcome = self.step()
                if outcome.kind is not OutcomeKind.CONTINUE:
                    break
                if max_steps is not None and outcome.step >= max_steps:
                    break
        finally:
            if start_tracing:
                tracemalloc.stop()
        _logger.info(
            "Materialisation (%s) ended with %s after %d steps, %d facts stored",
            self.mode,
            outcome.kind,
            outcome.step,
            outcome.store.size(),
        )
        return outcome


def materialise(
    program: Program,
    dataset: Dataset | FactStore,
    query: Fact | None = None,
    *,
    mode: MaterialisationMode = MaterialisationMode.OPTIMISED,
    max_steps: int | None = DEFAULT_MAX_STEPS,
    drop_rules: bool = True,
    trace: TraceSink | None = None,
    log: InstanceLog | None = None,
    cancel: threading.Event | None = None,
) -> StepOutcome:
    """Materialise until inconsistency, query entailment, a fixpoint or the step limit.

    Reaching the limit returns a ``continue`` outcome carrying the partial store.
    """
    materialiser = Materialiser(
        program, dataset, query, mode=mode, drop_rules=drop_rules, trace=trace, log=log, cancel=cancel
    )
    return materialiser.run(max_steps)


def materialise_halt(
    program: Program,
    dataset: Dataset | FactStore,
    query: Fact | None = None,
    *,
    max_steps: int | None = DEFAULT_MAX_STEPS,
    trace: TraceSink | None = None,
    cancel: threading.Event | None = None,
) -> StepOutcome:
    """Optimised materialisation that stops once every non-recursive predicate is complete.

    A ``halted`` outcome carries the reduced program and the store from before
    the step that completed the non-recursive predicates.
    """
    materialiser = Materialiser(
        program, dataset, query, mode=MaterialisationMode.OPTIMISED, halt=True, trace=trace, cancel=cancel
    )
    return materialiser.run(max_steps)
