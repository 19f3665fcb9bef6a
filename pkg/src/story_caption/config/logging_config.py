"""Logging configuration for the caption pipeline.

Records go to stderr; stdout carries only the subcommand summary. Both formats
render the ``extra=`` context (component, video_id, counts, timings) that the
use cases attach to their records.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass
from datetime import UTC, datetime
from pathlib import Path

import numpy as np

_RECORD_ATTRIBUTES = frozenset(vars(logging.makeLogRecord({}))) | {"message", "asctime", "taskName"}
TEXT_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def record_extras(record: logging.LogRecord) -> dict[str, object]:
    """Return the ``extra=`` fields of a record, sorted by key."""
    return {key: record.__dict__[key] for key in sorted(record.__dict__) if key not in _RECORD_ATTRIBUTES and not key.startswith("_")}


def _json_default(value: object) -> object:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    return repr(value)


class JsonFormatter(logging.Formatter):
    """Format log records as single-line JSON."""

    def format(self, record: logging.LogRecord) -> str:
        """Serialize a log record into a JSON string."""
        payload: dict[str, object] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            **record_extras(record),
        }
        if record.exc_info is not None:
            payload["exception"] = self.formatException(record.exc_info)
        if record.stack_info is not None:
            payload["stack"] = self.formatStack(record.stack_info)
        return json.dumps(payload, default=_json_default)


class ContextTextFormatter(logging.Formatter):
    """Text formatter appending ``key=value`` pairs for the record's extras."""

    def __init__(self) -> None:
        """Use the pipeline's text layout."""
        super().__init__(TEXT_FORMAT)

    def formatMessage(self, record: logging.LogRecord) -> str:  # noqa: N802
        """Append the extras after the message."""
        line = super().formatMessage(record)
        extras = record_extras(record)
        if not extras:
            return line
        return line + " " + " ".join(f"{key}={value}" for key, value in extras.items())


@dataclass(frozen=True)
class LoggingSettings:
    """Logging configuration settings."""

    level: str = "INFO"
    log_format: str = "text"


def configure_logging(settings: LoggingSettings) -> None:
    """Install one stderr handler on the root logger and route ``warnings`` through it."""
    formatter: logging.Formatter = JsonFormatter() if settings.log_format == "json" else ContextTextFormatter()

    handler = logging.StreamHandler(stream=sys.stderr)
    handler.setFormatter(formatter)

    logging.basicConfig(
        level=settings.level,
        handlers=[handler],
        force=True,
    )
    # scikit-learn reports EM convergence problems as warnings
    logging.captureWarnings(capture=True)
