"""Loading programs, datasets and query facts from files and arguments."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
from typing import TypeVar

from returns.result import Failure, Result, Success

from metricdl.errors import MetricDLError, ParseError
from metricdl.logging import get_logger
from metricdl.syntax import ArityTable, Dataset, Fact, Program, parse_dataset, parse_fact, parse_program

__all__ = ["LoadSession", "load_dataset", "load_program", "parse_fact_argument"]

_logger = get_logger("loading")

T = TypeVar("T")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _attempt(parse: Callable[[], T]) -> Result[T, MetricDLError]:
    try:
        return Success(parse())
    except MetricDLError as exc:
        return Failure(exc)


class LoadSession:
    """Loads inputs that must agree on predicate arities."""

    def __init__(self) -> None:
        self.arities = ArityTable()

    def program(self, path: Path) -> Result[Program, MetricDLError]:
        _logger.debug("Loading program from %s", path)
        return _attempt(lambda: parse_program(_read(path), self.arities))

    def dataset(self, path: Path) -> Result[Dataset, MetricDLError]:
        _logger.debug("Loading dataset from %s", path)
        return _attempt(lambda: parse_dataset(_read(path), self.arities))

    def fact(self, text: str) -> Result[Fact, MetricDLError]:
        return _attempt(lambda: parse_fact(text.strip(), self.arities))


def load_program(path: Path) -> Result[Program, MetricDLError]:
    return LoadSession().program(path)


def load_dataset(path: Path) -> Result[Dataset, MetricDLError]:
    return LoadSession().dataset(path)


def parse_fact_argument(text: str) -> Result[Fact, MetricDLError]:
    """Parse a query fact such as ``P(a)@[0,1]`` given on the command line."""
    return LoadSession().fact(text)
