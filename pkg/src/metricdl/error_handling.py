"""Mapping reasoning errors to command exit codes."""

from __future__ import annotations

import functools
import logging
import sys
from collections.abc import Callable
from typing import ParamSpec

from pydantic import ValidationError

from metricdl.errors import BudgetExceededError, MetricDLError, ReasoningCancelledError

__all__ = ["EXIT_BUDGET", "EXIT_NEGATIVE", "EXIT_POSITIVE", "EXIT_USAGE", "wrap_command"]

P = ParamSpec("P")

EXIT_NEGATIVE = 0  # notEntailed or consistent
EXIT_POSITIVE = 1  # entailed or inconsistent
EXIT_USAGE = 2
EXIT_BUDGET = 3


def wrap_command(
    *,
    logger: logging.Logger,
    command_name: str,
) -> Callable[[Callable[P, int]], Callable[P, int]]:
    """
    Decorator turning the errors of a subcommand into exit codes.

    Input errors and invalid settings exit with EXIT_USAGE, exhausted budgets
    with EXIT_BUDGET. The message goes to stderr; the traceback only to the
    debug log.

    Args:
        logger: Logger receiving the traceback.
        command_name: Subcommand name used in messages.

    Returns:
        Decorator function.
    """

    def decorator(func: Callable[P, int]) -> Callable[P, int]:
        @functools.wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> int:
            try:
                return func(*args, **kwargs)
            except BudgetExceededError as exc:
                logger.debug("%s ran out of budget", command_name, exc_info=True)
                print(f"{command_name}: budget exceeded: {exc.reason}", file=sys.stderr)
                return EXIT_BUDGET
            except ValidationError as exc:
                logger.debug("Invalid settings for %s", command_name, exc_info=True)
                for error in exc.errors():
                    location = ".".join(str(part) for part in error["loc"])
                    print(f"{command_name}: invalid {location}: {error['msg']}", file=sys.stderr)
                return EXIT_USAGE
            except ReasoningCancelledError:
                raise
            except MetricDLError as exc:
                logger.debug("%s rejected its input", command_name, exc_info=True)
                print(f"{command_name}: {exc}", file=sys.stderr)
                return EXIT_USAGE

        return wrapper

    return decorator
