"""Logging configuration using loguru."""
from __future__ import annotations

import sys

from loguru import logger

from twogap.config import get_settings

_configured = False


def configure_logging(level: str | None = None) -> None:
    """Configure the loguru logger; diagnostics always go to stderr."""

    global _configured
    logger.remove()
    logger.add(
        sys.stderr,
        format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level} | {name}:{function}:{line} - {message}",
        serialize=False,
        level=level or get_settings().log_level,
    )
    _configured = True


def get_logger(name: str):
    if not _configured:
        configure_logging()
    return logger.bind(component=name)
