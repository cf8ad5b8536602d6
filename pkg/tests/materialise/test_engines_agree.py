"""Random-corpus agreement between the materialisation procedures."""

from __future__ import annotations

import random

import pytest

from metricdl.analysis import recursive_predicates
from metricdl.evaluation import RuleInstance
from metricdl.materialise import Materialiser, materialise
from metricdl.syntax import Dataset, Program
from metricdl.types import MaterialisationMode, OutcomeKind
from tests.helpers.corpus import random_dataset, random_program

MAX_STEPS = 8


def corpus(seed: int, size: int, *, constraints: bool = True) -> list[tuple[Program, Dataset]]:
    rng = random.Random(seed)
    return [
        (
            random_program(
                rng, rules=rng.randint(1, 4), depth=2, unbounded=rng.random() < 0.2, constraints=constraints
            ),
            random_dataset(rng, facts=rng.randint(1, 6), halves=rng.random() < 0.5),
        )
        for _ in range(size)
    ]


def assert_steps_agree(program: Program, dataset: Dataset) -> None:
    runs = {mode: Materialiser(program, dataset, mode=mode) for mode in MaterialisationMode}
    for _ in range(MAX_STEPS):
        outcomes = {mode: runner.step() for mode, runner in runs.items()}
        kinds = {outcome.kind for outcome in outcomes.values()}
        stores = [outcome.store for outcome in outcomes.values()]
        assert len(kinds) == 1, (program, dataset, outcomes)
        assert all(store == stores[0] for store in stores[1:]), (program, dataset)
        if kinds != {OutcomeKind.CONTINUE}:
            return


class TestProceduresAgree:
    """Tests that every procedure computes the same stores step by step."""

    def test_small_corpus(self) -> None:
        """Naive, semi-naive and optimised runs agree on forty programs."""
        for program, dataset in corpus(7, 40):
            assert_steps_agree(program, dataset)

    def test_forward_corpus(self) -> None:
        """Forward-propagating programs exercise rule dropping."""
        rng = random.Random(21)
        for _ in range(30):
            program = random_program(rng, rules=rng.randint(2, 4), forward_only=True)
            assert_steps_agree(program, random_dataset(rng, facts=5))

    @pytest.mark.slow
    def test_large_corpus(self) -> None:
        """The agreement holds over two hundred programs."""
        for program, dataset in corpus(99, 200):
            assert_steps_agree(program, dataset)

    def test_drop_switch_preserves_stores(self) -> None:
        """Disabling rule dropping never changes what is derived."""
        for program, dataset in corpus(5, 30, constraints=False):
            with_drops = materialise(program, dataset, max_steps=MAX_STEPS)
            without_drops = materialise(program, dataset, max_steps=MAX_STEPS, drop_rules=False)
            assert with_drops.kind is without_drops.kind
            assert with_drops.store == without_drops.store


class TestNonRepetition:
    """Tests for the instance counts of semi-naive evaluation."""

    def test_no_instance_enumerated_twice(self) -> None:
        """Semi-naive evaluation never revisits a rule instance."""
        for program, dataset in corpus(13, 40):
            logged: list[RuleInstance] = []
            materialise(program, dataset, mode=MaterialisationMode.SEMINAIVE, max_steps=MAX_STEPS, log=logged.append)
            seen = [(instance.rule.name, instance.binding, instance.intervals) for instance in logged]
            assert len(seen) == len(set(seen)), program

    def test_seminaive_never_exceeds_naive(self) -> None:
        """Semi-naive evaluation enumerates at most as many instances as naive."""
        for program, dataset in corpus(17, 40):
            counts = {}
            for mode in (MaterialisationMode.NAIVE, MaterialisationMode.SEMINAIVE):
                runner = Materialiser(program, dataset, mode=mode)
                runner.run(max_steps=MAX_STEPS)
                counts[mode] = runner.instance_count
            assert counts[MaterialisationMode.SEMINAIVE] <= counts[MaterialisationMode.NAIVE], program

    @pytest.mark.slow
    def test_optimised_beats_naive_on_recursive_programs(self) -> None:
        """On recursive runs lasting several steps the optimised mode usually enumerates strictly fewer instances."""
        runs = wins = 0
        for program, dataset in corpus(29, 300, constraints=False):
            if not recursive_predicates(program):
                continue
            counts = {}
            for mode in (MaterialisationMode.NAIVE, MaterialisationMode.OPTIMISED):
                runner = Materialiser(program, dataset, mode=mode)
                outcome = runner.run(max_steps=MAX_STEPS)
                counts[mode] = runner.instance_count
            if outcome.step < 3:
                continue
            assert counts[MaterialisationMode.OPTIMISED] <= counts[MaterialisationMode.NAIVE], program
            runs += 1
            wins += counts[MaterialisationMode.OPTIMISED] < counts[MaterialisationMode.NAIVE]
        assert runs >= 20
        assert 2 * wins >= runs, f"optimised won {wins} of {runs} runs"


class TestFlag:
    """Tests for the completeness of non-recursive predicates."""

    def test_nonrecursive_facts_complete_at_flag(self) -> None:
        """When the flag flips, non-recursive facts match a long naive run."""
        checked = 0
        for program, dataset in corpus(23, 60, constraints=False):
            runner = Materialiser(program, dataset)
            outcome = None
            for _ in range(20):
                outcome = runner.step()
                if runner.state.flag or outcome.kind is not OutcomeKind.CONTINUE:
                    break
            if not runner.state.flag:
                continue
            nonrecursive = (program.predicates() | dataset.predicates()) - recursive_predicates(program)
            reference = materialise(program, dataset, mode=MaterialisationMode.NAIVE, max_steps=40)
            assert runner.store.restricted_to(nonrecursive) == reference.store.restricted_to(nonrecursive), program
            checked += 1
        assert checked > 0
