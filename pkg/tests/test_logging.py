"""Tests for logging configuration."""

from __future__ import annotations

import logging
from collections.abc import Iterator
from pathlib import Path

import pytest

from metricdl.logging import PACKAGE_LOGGER, configure_logging, get_logger


@pytest.fixture(autouse=True)
def restore_package_logger() -> Iterator[None]:
    """Restore the metricdl logger after each test."""
    logger = logging.getLogger(PACKAGE_LOGGER)
    handlers = list(logger.handlers)
    level = logger.level
    propagate = logger.propagate

    yield

    for handler in list(logger.handlers):
        if handler not in handlers:
            logger.removeHandler(handler)
            handler.close()
    logger.handlers[:] = handlers
    logger.setLevel(level)
    logger.propagate = propagate


class TestConfigureLogging:
    """Tests for configure_logging."""

    def test_default_level_is_info(self) -> None:
        """Default configuration sets INFO level."""
        configure_logging()
        assert logging.getLogger(PACKAGE_LOGGER).level == logging.INFO

    def test_level_is_case_insensitive(self) -> None:
        """Level names are accepted in any case."""
        configure_logging(level="debug")
        assert logging.getLogger(PACKAGE_LOGGER).level == logging.DEBUG

    def test_unknown_level_falls_back_to_info(self) -> None:
        """Unknown level names fall back to INFO."""
        configure_logging(level="chatty")
        assert logging.getLogger(PACKAGE_LOGGER).level == logging.INFO

    def test_writes_to_stderr_only(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Diagnostics never reach stdout."""
        configure_logging()
        get_logger("materialise.runner").info("step finished")

        captured = capsys.readouterr()
        assert "step finished" in captured.err
        assert captured.out == ""

    def test_file_handler(self, tmp_path: Path) -> None:
        """A log file replaces the stderr handler."""
        log_file = tmp_path / "reasoner.log"
        configure_logging(log_file=log_file)
        logger = logging.getLogger(PACKAGE_LOGGER)
        logger.warning("budget exceeded")
        for handler in logger.handlers:
            handler.flush()

        assert "budget exceeded" in log_file.read_text(encoding="utf-8")

    def test_reconfiguring_replaces_handlers(self) -> None:
        """Calling twice leaves a single handler and drops foreign ones."""
        logger = logging.getLogger(PACKAGE_LOGGER)
        sentinel = logging.NullHandler()
        logger.addHandler(sentinel)

        configure_logging()
        configure_logging()

        assert sentinel not in logger.handlers
        assert len(logger.handlers) == 1
        assert logger.propagate is False


class TestGetLogger:
    """Tests for get_logger."""

    def test_namespaced(self) -> None:
        """Loggers live under the package namespace."""
        assert get_logger("engine.decide").name == "metricdl.engine.decide"
