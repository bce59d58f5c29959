"""Logging setup for the jet-poisson CLI."""

import logging
import sys

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEBUG_FORMAT = "%(asctime)s - %(name)s:%(lineno)d - %(levelname)s - %(message)s"

# third-party loggers never go below WARNING
QUIET_LOGGERS = ("sympy",)


def setup_logging(level: int = logging.INFO) -> None:
    """Send log records to stderr; stdout carries command results.

    Calling it again replaces the previous handlers, so repeated CLI
    invocations in one process log to the current stderr.

    Args:
        level: Logging level (default: INFO)
    """
    logging.basicConfig(
        level=level,
        format=DEBUG_FORMAT if level <= logging.DEBUG else LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(max(level, logging.WARNING))
