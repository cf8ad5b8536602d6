"""Exception hierarchy shared by every metricdl layer."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from metricdl.store.fact_store import FactStore

__all__ = [
    "BudgetExceededError",
    "EmptyIntervalError",
    "InvalidIntervalError",
    "MetricDLError",
    "NotUnionCompatibleError",
    "ParseError",
    "ReasoningCancelledError",
]


class MetricDLError(Exception):
    """Base class for all errors raised by metricdl."""


class InvalidIntervalError(MetricDLError, ValueError):
    """An interval violates the endpoint invariants."""


class EmptyIntervalError(InvalidIntervalError):
    """An interval would contain no time point."""


class NotUnionCompatibleError(MetricDLError, ValueError):
    """Two intervals whose union is not an interval were asked to coalesce."""


class ParseError(MetricDLError):
    """A program, dataset or fact text could not be accepted."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line <= 0:
            return self.message
        return f"line {self.line}, column {self.column}: {self.message}"


class BudgetExceededError(MetricDLError):
    """A reasoning run hit its state, step or time budget without a verdict."""

    def __init__(self, reason: str, store: FactStore | None = None) -> None:
        super().__init__(reason)
        self.reason = reason
        self.store = store


class ReasoningCancelledError(MetricDLError):
    """A reasoning run observed its cancellation signal."""
