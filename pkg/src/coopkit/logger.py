"""Logging configuration for coopkit."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional

from coopkit.rationals import format_rational

LOGGER_NAME = "coopkit"


def setup_logger(
    log_level: str = "INFO",
    log_file: Optional[str] = None
) -> logging.Logger:
    """Set up logger with console and optional file handlers.

    The console handler writes to stderr so that reports on stdout stay
    machine-readable. The file handler always records DEBUG, which includes
    every round of the fixed-point iterations.

    Args:
        log_level: Console log level (DEBUG, INFO, WARNING, ERROR).
        log_file: Optional path to log file. If None, no file logging.

    Returns:
        Configured logger instance.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)

    # Remove existing handlers and filters to avoid duplicates
    logger.handlers.clear()
    logger.filters.clear()
    logger.addFilter(EventFilter())

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    console_handler.setLevel(getattr(logging, log_level.upper(), logging.INFO))
    logger.addHandler(console_handler)

    if log_file is not None:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        logger.addHandler(file_handler)

    return logger


def get_logger() -> logging.Logger:
    """Get the configured logger instance.

    Returns:
        Logger instance.
    """
    return logging.getLogger(LOGGER_NAME)


class EventFilter(logging.Filter):
    """Render events and rationals in log arguments.

    Events (frozensets of state ids) are printed sorted and truncated after
    ``max_states`` members; Fractions are printed as canonical ``p/q``.
    """

    def __init__(self, max_states: int = 6):
        """Initialize the filter.

        Args:
            max_states: Number of states shown before an event is abbreviated.
        """
        super().__init__()
        self.max_states = max_states

    def filter(self, record: logging.LogRecord) -> bool:
        """Rewrite the record's arguments; never blocks a record.

        Args:
            record: Log record to filter.

        Returns:
            Always True.
        """
        if isinstance(record.args, tuple):
            record.args = tuple(self._render(arg) for arg in record.args)
        return True

    def _render(self, value):
        if isinstance(value, Fraction):
            return format_rational(value)
        if isinstance(value, frozenset):
            states = sorted(str(state) for state in value)
            shown = "; ".join(states[: self.max_states])
            if len(states) > self.max_states:
                shown += "; ... (%d states)" % len(states)
            return "{%s}" % shown
        return value
