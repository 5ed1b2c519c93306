"""Loguru logger configuration for Whittaker Zeta.

The console sink goes to stderr so stdout carries only JSON/CSV results.
The run log records every message at DEBUG together with the CLI
subcommand that produced it (``library`` outside a CLI run).
"""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from loguru import logger

from whittaker_zeta.config import settings

FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[command]} | "
    "{name}:{function}:{line} - {message}"
)


def setup_logger() -> None:
    """Install the console sink and, when LOG_FILE is set, the run log."""
    logger.remove()
    logger.configure(extra={"command": "library"})

    logger.add(
        sys.stderr,
        format=settings.log_format,
        level=settings.log_level,
        colorize=True,
        backtrace=True,
        diagnose=False,
    )

    if settings.log_file:
        log_path = Path(settings.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_path,
            format=FILE_FORMAT,
            level="DEBUG",
            rotation="10 MB",
            retention="30 days",
            compression="zip",
            backtrace=True,
            diagnose=False,
        )


@contextmanager
def run_context(command: str) -> Iterator[None]:
    """Tag every message logged inside the block with the CLI subcommand."""
    with logger.contextualize(command=command):
        logger.debug(f"{command} started")
        yield
        logger.debug(f"{command} finished")


# Initialize logger
setup_logger()

__all__ = ["logger", "run_context", "setup_logger"]
