"""Shared fixtures built from the running example."""

from __future__ import annotations

import pytest

from metricdl.store import FactStore
from metricdl.syntax import Dataset, Program, parse_dataset, parse_program
from tests.helpers.running_example import (
    DATASET_TEXT,
    PROGRAM_TEXT,
    STORE_AFTER_STEP_1,
    STORE_AFTER_STEP_2,
    STORE_AFTER_STEP_3,
)


@pytest.fixture
def example_program() -> Program:
    return parse_program(PROGRAM_TEXT)


@pytest.fixture
def example_dataset() -> Dataset:
    return parse_dataset(DATASET_TEXT)


@pytest.fixture
def example_store(example_dataset: Dataset) -> FactStore:
    return FactStore.from_dataset(example_dataset)


@pytest.fixture
def store_step_1() -> FactStore:
    return FactStore.from_dataset(parse_dataset(STORE_AFTER_STEP_1))


@pytest.fixture
def store_step_2() -> FactStore:
    return FactStore.from_dataset(parse_dataset(STORE_AFTER_STEP_2))


@pytest.fixture
def store_step_3() -> FactStore:
    return FactStore.from_dataset(parse_dataset(STORE_AFTER_STEP_3))
