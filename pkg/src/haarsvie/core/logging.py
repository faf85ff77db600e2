"""
Logging configuration for haarsvie.

This module sets up logging with the appropriate format and handlers.
"""
import logging
import sys
from typing import Optional

from haarsvie.config import settings


def setup_logging(level: Optional[str] = None) -> None:
    """Configure logging for the CLI and the HTTP app.

    Sets up logging with the log level and format from settings. Output goes to
    stderr so that CLI table output on stdout stays clean.

    Args:
        level: Optional level name overriding ``settings.LOG_LEVEL``
    """
    log_level = (level or settings.LOG_LEVEL).upper()
    log_format = settings.LOG_FORMAT

    # Configure root logger
    logging.basicConfig(
        level=log_level,
        format=log_format,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    # Configure specific loggers
    loggers = {
        "uvicorn": logging.INFO,
        "uvicorn.error": logging.INFO,
        "uvicorn.access": logging.INFO if settings.DEBUG else logging.WARNING,
        "httpx": logging.WARNING,
        "httpcore": logging.WARNING,
    }

    for logger_name, logger_level in loggers.items():
        logging.getLogger(logger_name).setLevel(logger_level)

    # Per-path solver chatter stays quiet unless debugging
    if not settings.DEBUG and log_level != "DEBUG":
        logging.getLogger("haarsvie.services.svie_solver").setLevel(logging.INFO)
