"""Fact entailment and consistency decisions combining materialisation with the automata."""

from __future__ import annotations

import asyncio
import threading
from functools import partial
from typing import Literal, NamedTuple

from metricdl.analysis import relevant_rules
from metricdl.automata import check_consistency as check_with_automata
from metricdl.automata import reduce_entailment
from metricdl.config import EngineConfig, MaterialisationConfig
from metricdl.engine.race import Contender, race
from metricdl.errors import BudgetExceededError
from metricdl.logging import get_logger
from metricdl.materialise import StepOutcome, materialise, materialise_halt
from metricdl.store import FactStore
from metricdl.syntax.ast import Dataset, Fact, Program
from metricdl.types import MaterialisationMode, OutcomeKind, Provenance, ReasoningMode, Verdict

__all__ = ["ConsistencyDecision", "ConsistencyMethod", "Decision", "check_consistency", "decide", "decide_async"]

_logger = get_logger("engine.decision")

ConsistencyMethod = Literal["automata", "materialisation"]

_MATERIALISATION_MODES = {
    ReasoningMode.NAIVE: MaterialisationMode.NAIVE,
    ReasoningMode.SEMINAIVE: MaterialisationMode.SEMINAIVE,
    ReasoningMode.OPTIMISED: MaterialisationMode.OPTIMISED,
}

_TERMINAL_VERDICTS = {
    OutcomeKind.INCONSISTENT: Verdict.INCONSISTENT,
    OutcomeKind.ENTAILED: Verdict.ENTAILED,
    OutcomeKind.FIXPOINT: Verdict.NOT_ENTAILED,
}


class Decision(NamedTuple):
    """A verdict, the task that reached it, and the store materialised on the way."""

    verdict: Verdict
    provenance: Provenance
    store: FactStore | None = None
    steps: int = 0
    cancelled: tuple[str, ...] = ()  # racing tasks stopped once this verdict was reached


class ConsistencyDecision(NamedTuple):
    consistent: bool
    provenance: Provenance
    store: FactStore | None = None
    steps: int = 0


def _with_constraints(derivation: Program, program: Program) -> Program:
    return Program((*derivation.rules, *(rule for rule in program if rule.is_constraint)))


def _from_outcome(outcome: StepOutcome, provenance: Provenance, steps: int = 0) -> Decision | None:
    verdict = _TERMINAL_VERDICTS.get(outcome.kind)
    if verdict is None:
        return None
    return Decision(verdict, provenance, outcome.store, steps + outcome.step)


def _materialisation_task(
    program: Program,
    store: FactStore,
    fact: Fact,
    settings: MaterialisationConfig,
    mode: MaterialisationMode,
    cancel: threading.Event | None = None,
    provenance: Provenance = Provenance.MATERIALISATION,
    steps: int = 0,
) -> Decision:
    outcome = materialise(
        program,
        store,
        fact,
        mode=mode,
        max_steps=settings.max_steps,
        drop_rules=settings.drop_rules,
        cancel=cancel,
    )
    decision = _from_outcome(outcome, provenance, steps)
    if decision is None:
        raise BudgetExceededError(f"materialisation reached {settings.max_steps} steps", outcome.store)
    return decision


def _automata_task(
    program: Program,
    dataset: Dataset,
    fact: Fact,
    config: EngineConfig,
    cancel: threading.Event | None = None,
    store: FactStore | None = None,
    steps: int = 0,
) -> Decision:
    budget = config.automata
    check = partial(check_with_automata, max_states=budget.max_states, max_seconds=budget.max_seconds, cancel=cancel)
    if not check(program, dataset).consistent:
        return Decision(Verdict.INCONSISTENT, Provenance.AUTOMATA, store, steps)
    reduction = reduce_entailment(program, dataset, fact)
    consistent = check(reduction.program, reduction.dataset).consistent
    verdict = Verdict.NOT_ENTAILED if consistent else Verdict.ENTAILED
    return Decision(verdict, Provenance.AUTOMATA, store, steps)


async def _race(program: Program, store: FactStore, fact: Fact, config: EngineConfig, steps: int) -> Decision:
    dataset = store.to_dataset()
    outcome = await race(
        [
            Contender(
                "materialisation",
                lambda cancel: _materialisation_task(
                    program, store, fact, config.materialisation, MaterialisationMode.OPTIMISED, cancel, steps=steps
                ),
            ),
            Contender("automata", lambda cancel: _automata_task(program, dataset, fact, config, cancel, store, steps)),
        ]
    )
    return outcome.value._replace(cancelled=outcome.cancelled)


def _relevant_inputs(program: Program, dataset: Dataset, fact: Fact, config: EngineConfig) -> tuple[Program, Dataset]:
    if not config.filter_relevant:
        return program, dataset
    relevant = relevant_rules(program, fact.atom.predicate)
    restricted = dataset.restricted_to(relevant.predicates() | {fact.atom.predicate})
    _logger.debug(
        "Kept %d of %d rules and %d of %d facts relevant to %s",
        len(relevant),
        len(program),
        len(restricted),
        len(dataset),
        fact.atom.predicate,
    )
    return relevant, restricted


async def decide_async(program: Program, dataset: Dataset, fact: Fact, config: EngineConfig | None = None) -> Decision:
    """Decide whether ``program`` and ``dataset`` entail ``fact``.

    In ``auto`` mode the relevant rules are materialised until every
    non-recursive predicate is complete; the remaining problem is then
    handed to materialisation and the automata, racing in two threads
    (or one after the other with ``threads=1``). Raises
    BudgetExceededError when no task reaches a verdict within its budget.
    """
    config = config or EngineConfig()
    program, dataset = _relevant_inputs(program, dataset, fact, config)
    settings = config.materialisation

    if config.mode in _MATERIALISATION_MODES:
        store = FactStore.from_dataset(dataset)
        return _materialisation_task(program, store, fact, settings, _MATERIALISATION_MODES[config.mode])
    if config.mode is ReasoningMode.AUTOMATA:
        return _automata_task(program, dataset, fact, config)

    outcome = materialise_halt(program, dataset, fact, max_steps=settings.max_steps)
    decision = _from_outcome(outcome, Provenance.PRE_MATERIALISATION)
    if decision is not None:
        _logger.info("Pre-materialisation decided %s after %d steps", decision.verdict, decision.steps)
        return decision
    remaining = _with_constraints(outcome.program, program)
    _logger.info(
        "Pre-materialisation %s after %d steps with %d rules left",
        "halted" if outcome.kind is OutcomeKind.HALTED else "ran out of steps",
        outcome.step,
        len(remaining),
    )
    if config.threads == 1:
        return _sequential(remaining, outcome.store, fact, config, outcome.step)
    return await _race(remaining, outcome.store, fact, config, outcome.step)


def _sequential(program: Program, store: FactStore, fact: Fact, config: EngineConfig, steps: int) -> Decision:
    try:
        return _materialisation_task(
            program, store, fact, config.materialisation, MaterialisationMode.OPTIMISED, steps=steps
        )
    except BudgetExceededError as error:
        _logger.info("Materialisation gave up (%s); running the automata", error.reason)
        reached = error.store if error.store is not None else store
    try:
        return _automata_task(program, reached.to_dataset(), fact, config, store=reached, steps=steps)
    except BudgetExceededError as error:
        raise BudgetExceededError(f"every task ran out of budget ({error.reason})", reached) from error


def decide(program: Program, dataset: Dataset, fact: Fact, config: EngineConfig | None = None) -> Decision:
    """Blocking wrapper around ``decide_async``."""
    return asyncio.run(decide_async(program, dataset, fact, config))


def check_consistency(
    program: Program,
    dataset: Dataset,
    method: ConsistencyMethod = "automata",
    config: EngineConfig | None = None,
) -> ConsistencyDecision:
    """Whether ``program`` and ``dataset`` have a model, by the automata or by materialising to a fixpoint."""
    config = config or EngineConfig()
    if method == "automata":
        budget = config.automata
        report = check_with_automata(program, dataset, max_states=budget.max_states, max_seconds=budget.max_seconds)
        return ConsistencyDecision(report.consistent, Provenance.AUTOMATA)
    settings = config.materialisation
    outcome = materialise(
        program, dataset, mode=settings.mode, max_steps=settings.max_steps, drop_rules=settings.drop_rules
    )
    if outcome.kind is OutcomeKind.CONTINUE:
        raise BudgetExceededError(f"materialisation reached {settings.max_steps} steps", outcome.store)
    consistent = outcome.kind is not OutcomeKind.INCONSISTENT
    return ConsistencyDecision(consistent, Provenance.MATERIALISATION, outcome.store, outcome.step)
