"""Logging setup for the metricdl package logger."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

__all__ = ["PACKAGE_LOGGER", "configure_logging", "get_logger"]

PACKAGE_LOGGER = "metricdl"


def configure_logging(*, level: str = "INFO", log_file: Path | None = None) -> None:
    """
    Configure the ``metricdl`` logger.

    Reasoning runs can be long, so diagnostics go to stderr by default and
    never mix with the results the CLI prints on stdout.

    Args:
        level: Log level name, case-insensitive. Unknown names fall back to INFO.
        log_file: Optional path to a log file used instead of stderr.
    """
    log_level = getattr(logging, level.upper(), logging.INFO)
    if not isinstance(log_level, int):
        log_level = logging.INFO

    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(log_level)

    for old in list(logger.handlers):
        logger.removeHandler(old)
        old.close()

    handler: logging.Handler
    if log_file is not None:
        handler = logging.FileHandler(log_file, encoding="utf-8")
    else:
        handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        logging.Formatter(
            fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    handler.setLevel(log_level)
    logger.addHandler(handler)
    logger.propagate = False


def get_logger(name: str) -> logging.Logger:
    """Logger for ``name`` under the package namespace, e.g. ``materialise.runner``."""
    return logging.getLogger(f"{PACKAGE_LOGGER}.{name}")
