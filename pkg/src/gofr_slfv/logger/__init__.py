"""
gofr-slfv Logger Module

Structured logging for simulation runs, verification passes and the CLI.
All records go to stderr; data products go to files.

Usage:
    from gofr_slfv.logger import get_logger

    logger = get_logger("gofr-slfv.chain")
    logger.info("Trajectory finished", seed=7, kappa_hat=212)

Environment Variables:
    {PREFIX}_LOG_LEVEL: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    {PREFIX}_LOG_FILE: Optional file path for log output
    {PREFIX}_LOG_FORMAT: "json" for JSON output, "console" (default) for text

    Where {PREFIX} is derived from the root of the logger name
    ("gofr-slfv.chain" -> GOFR_SLFV).
"""

import logging
import os
from typing import Optional

from .interface import Logger
from .structured_logger import JsonFormatter, StructuredLogger, TextFormatter, make_formatter


def _get_env_prefix(name: str) -> str:
    """Convert logger name to environment variable prefix.

    Examples:
        "gofr-slfv" -> "GOFR_SLFV"
        "gofr-slfv.diagnostics" -> "GOFR_SLFV"
    """
    return name.split(".", 1)[0].upper().replace("-", "_")


def create_logger(
    name: str = "gofr-slfv",
    level: Optional[int] = None,
    log_file: Optional[str] = None,
    json_format: Optional[bool] = None,
) -> Logger:
    """Create a new logger instance with the specified configuration.

    Parameters left as None are read from {PREFIX}_LOG_LEVEL, {PREFIX}_LOG_FILE
    and {PREFIX}_LOG_FORMAT.

    Args:
        name: Logger name (e.g., "gofr-slfv.cli")
        level: Logging level (defaults to INFO or env var)
        log_file: Optional file path for log output
        json_format: If True, output logs as JSON

    Returns:
        A configured Logger instance
    """
    env_prefix = _get_env_prefix(name)

    if level is None:
        level_str = os.environ.get(f"{env_prefix}_LOG_LEVEL", "INFO").upper()
        level = getattr(logging, level_str, logging.INFO)

    if log_file is None:
        log_file = os.environ.get(f"{env_prefix}_LOG_FILE")

    if json_format is None:
        json_format = os.environ.get(f"{env_prefix}_LOG_FORMAT", "console").lower() == "json"

    return StructuredLogger(
        name=name,
        level=level if level is not None else logging.INFO,
        log_file=log_file,
        json_format=json_format,
    )


def get_logger(name: str = "gofr-slfv") -> Logger:
    """Get a logger configured from environment variables.

    Example:
        logger = get_logger("gofr-slfv.diagnostics")

        # export GOFR_SLFV_LOG_LEVEL=DEBUG
        # export GOFR_SLFV_LOG_FORMAT=json
    """
    return create_logger(name=name)


def configure_logging(level: str, log_format: str, root: str = "gofr-slfv") -> None:
    """Apply a level and format to every logger already created under ``root``.

    Loggers are created at import time from the process environment; the CLI
    calls this once settings (which may come from a .env file) are loaded.
    """
    json_format = log_format.lower() == "json"
    numeric = getattr(logging, level.upper(), logging.INFO)
    names = [root] + [n for n in logging.Logger.manager.loggerDict if n.startswith(root + ".")]
    for name in names:
        target = logging.getLogger(name)
        if not target.handlers:
            continue
        target.setLevel(numeric)
        for handler in target.handlers:
            handler.setFormatter(make_formatter(json_format))


__all__ = [
    "Logger",
    "StructuredLogger",
    "JsonFormatter",
    "TextFormatter",
    "configure_logging",
    "create_logger",
    "get_logger",
]
