"""
Logging for stableplace runs.

Records go to standard error, one JSON object per line by default, so that
artifact JSON written to standard output stays machine-readable. Every
record carries the tool version plus the seed and config hash of the run.
"""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from .constants import DEFAULT_LOG_LEVEL, DEFAULT_LOG_RETENTION, DEFAULT_LOG_ROTATION, TOOL_NAME, TOOL_VERSION

_TEXT_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> | "
    "<level>{message}</level>"
)


def setup_logging(
    log_level: str = DEFAULT_LOG_LEVEL,
    log_file: Optional[str] = None,
    json_lines: bool = True,
    rotation: str = DEFAULT_LOG_ROTATION,
    retention: str = DEFAULT_LOG_RETENTION,
) -> None:
    """
    Route loguru output for a command-line run.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_file: Optional rotating log file, always in text format
        json_lines: Serialize stderr records as JSON lines
        rotation: Size at which the log file rotates
        retention: How long rotated files are kept
    """
    logger.remove()
    logger.configure(extra={"tool": TOOL_NAME, "version": TOOL_VERSION})

    if json_lines:
        logger.add(sys.stderr, level=log_level.upper(), serialize=True)
    else:
        logger.add(sys.stderr, level=log_level.upper(), format=_TEXT_FORMAT, colorize=True)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_file,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} | {extra} | {message}",
            level=log_level.upper(),
            rotation=rotation,
            retention=retention,
            compression="zip",
        )


def bind_run(seed: int, config_hash: str) -> None:
    """Attach the run's seed and config hash to every later record."""
    logger.configure(extra={"tool": TOOL_NAME, "version": TOOL_VERSION, "seed": seed, "config_hash": config_hash})
