"""
Structured logger with JSON output and file support.

Progress and diagnostics go to stderr so that stdout and the output
directory stay reserved for data (JSONL logs, CSV reports).
"""

import json
import logging
import sys
import uuid
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from .interface import Logger

# LogRecord attributes that extra fields must not overwrite
_RESERVED_KEYS = frozenset(
    {
        "args", "asctime", "created", "exc_info", "exc_text", "filename",
        "funcName", "levelname", "levelno", "lineno", "module",
        "msecs", "message", "msg", "name", "pathname", "process",
        "processName", "relativeCreated", "stack_info", "thread",
        "threadName", "taskName",
    }
)


def _extra_fields(record: logging.LogRecord) -> Dict[str, Any]:
    return {
        key: value
        for key, value in record.__dict__.items()
        if key not in _RESERVED_KEYS and key != "session_id"
    }


class JsonFormatter(logging.Formatter):
    """Formats log records as one JSON object per line."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
        }
        session_id = getattr(record, "session_id", None)
        if session_id:
            log_data["session_id"] = str(session_id)
        log_data.update(_extra_fields(record))
        return json.dumps(log_data, default=str)


class TextFormatter(logging.Formatter):
    """Human-readable formatter that appends extra fields as key=value pairs."""

    def format(self, record: logging.LogRecord) -> str:
        s = super().format(record)
        extra_args = _extra_fields(record)
        if extra_args:
            s += " " + " ".join(f"{k}={v}" for k, v in extra_args.items())
        return s


def make_formatter(json_format: bool) -> logging.Formatter:
    if json_format:
        return JsonFormatter()
    return TextFormatter(
        "%(asctime)s [%(levelname)s] [%(name)s] [session:%(session_id)s] %(message)s"
    )


class StructuredLogger(Logger):
    """Logger with text or JSON formatting, stderr output and optional file output.

    Example:
        logger = StructuredLogger(name="gofr-slfv.chain")
        logger.info("Trajectory finished", seed=7, steps=5000, kappa_hat=212)

        run_logger = logger.bind(seed=7)
        run_logger.debug("Positive event", step=12)
    """

    def __init__(
        self,
        name: str = "gofr-slfv",
        level: int = logging.INFO,
        log_file: Optional[str] = None,
        json_format: bool = False,
        bound: Optional[Dict[str, Any]] = None,
        _shared: Optional[logging.Logger] = None,
        _session_id: Optional[str] = None,
    ):
        """Initialize the structured logger.

        Args:
            name: Logger name (e.g., "gofr-slfv.chain", "gofr-slfv.cli")
            level: Logging level (logging.DEBUG, logging.INFO, etc.)
            log_file: Optional file path for log output
            json_format: If True, output logs as JSON; otherwise use text format
            bound: Fields added to every record
        """
        self._name = name
        self._session_id = _session_id or str(uuid.uuid4())[:8]
        self._bound: Dict[str, Any] = dict(bound or {})

        if _shared is not None:
            self._logger = _shared
            return

        self._logger = logging.getLogger(name)
        self._logger.setLevel(level)

        # Clear existing handlers to avoid duplication if re-initialized
        if self._logger.hasHandlers():
            self._logger.handlers.clear()
        self._logger.propagate = False

        formatter = make_formatter(json_format)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        self._logger.addHandler(console_handler)

        if log_file:
            try:
                file_handler = logging.FileHandler(log_file)
                file_handler.setFormatter(formatter)
                self._logger.addHandler(file_handler)
            except OSError as e:
                print(f"Failed to setup log file {log_file}: {e}", file=sys.stderr)

    def get_session_id(self) -> str:
        """Get the current session ID."""
        return self._session_id

    def bind(self, **fields: Any) -> "StructuredLogger":
        """Return a child logger sharing handlers and session, with extra fields."""
        merged = {**self._bound, **fields}
        return StructuredLogger(
            name=self._name,
            bound=merged,
            _shared=self._logger,
            _session_id=self._session_id,
        )

    def _log(self, level: int, message: str, **kwargs: Any) -> None:
        if not self._logger.isEnabledFor(level):
            return
        extra: Dict[str, Any] = {"session_id": self._session_id}
        for k, v in {**self._bound, **kwargs}.items():
            # Prefix reserved keys to preserve them but avoid collision
            extra[f"_{k}" if k in _RESERVED_KEYS else k] = v
        self._logger.log(level, message, extra=extra)

    def debug(self, message: str, **kwargs: Any) -> None:
        """Log a debug message."""
        self._log(logging.DEBUG, message, **kwargs)

    def info(self, message: str, **kwargs: Any) -> None:
        """Log an info message."""
        self._log(logging.INFO, message, **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        """Log a warning message."""
        self._log(logging.WARNING, message, **kwargs)

    def error(self, message: str, **kwargs: Any) -> None:
        """Log an error message."""
        self._log(logging.ERROR, message, **kwargs)

    def critical(self, message: str, **kwargs: Any) -> None:
        """Log a critical message."""
        self._log(logging.CRITICAL, message, **kwargs)
