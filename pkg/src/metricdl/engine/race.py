"""First-past-the-post execution of blocking reasoning tasks in worker threads."""

from __future__ import annotations

import asyncio
import threading
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Generic, TypeVar

from metricdl.errors import BudgetExceededError, ReasoningCancelledError
from metricdl.logging import get_logger

__all__ = ["Contender", "RaceOutcome", "race"]

_logger = get_logger("engine.race")

T = TypeVar("T")


@dataclass(frozen=True)
class Contender(Generic[T]):
    name: str
    run: Callable[[threading.Event], T]  # must poll the event and raise ReasoningCancelledError once it is set


@dataclass(frozen=True)
class RaceOutcome(Generic[T]):
    winner: str
    value: T
    cancelled: tuple[str, ...]


async def _stop(tasks: dict[asyncio.Task, tuple[str, threading.Event]]) -> tuple[str, ...]:
    """Signal every task still running and wait until each has returned."""
    for _, event in tasks.values():
        event.set()
    results = await asyncio.gather(*tasks, return_exceptions=True)
    for (name, _), result in zip(tasks.values(), results):
        if isinstance(result, BaseException) and not isinstance(result, ReasoningCancelledError):
            _logger.debug("Cancelled task %s ended with %r", name, result)
    return tuple(name for name, _ in tasks.values())


async def race(contenders: Sequence[Contender[T]]) -> RaceOutcome[T]:
    """Run every contender in its own thread; the first to return a value wins.

    A contender running out of budget drops out of the race. When all of
    them do, the last BudgetExceededError is raised, carrying the first
    partial store any of them reported. Other errors stop the race.
    """
    pending: dict[asyncio.Task, tuple[str, threading.Event]] = {}
    for contender in contenders:
        event = threading.Event()
        task = asyncio.create_task(asyncio.to_thread(contender.run, event), name=contender.name)
        pending[task] = (contender.name, event)
    order = list(pending)
    exhausted: list[BudgetExceededError] = []
    try:
        while pending:
            done, _ = await asyncio.wait(pending, return_when=asyncio.FIRST_COMPLETED)
            for task in sorted(done, key=order.index):
                name, _ = pending.pop(task)
                error = task.exception()
                if error is None:
                    cancelled = await _stop(pending)
                    pending.clear()
                    _logger.info("Task %s won the race; cancelled %s", name, list(cancelled) or "nothing")
                    return RaceOutcome(name, task.result(), cancelled)
                if not isinstance(error, BudgetExceededError):
                    raise error
                _logger.info("Task %s ran out of budget: %s", name, error.reason)
                exhausted.append(error)
    finally:
        if pending:
            await _stop(pending)
    store = next((error.store for error in exhausted if error.store is not None), None)
    reasons = "; ".join(error.reason for error in exhausted)
    raise BudgetExceededError(f"every task ran out of budget ({reasons})", store)
