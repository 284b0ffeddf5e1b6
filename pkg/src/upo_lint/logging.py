"""
Structured logging for the analyses.

This module provides:
- Structured JSON logging to stderr for easy parsing in CI
- One method per analysis event (parse, lint, grounding, realization, resolution)
- A timing decorator for sync and async operations
"""

import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from enum import Enum
from functools import wraps
from typing import Any, Callable, Optional, TypeVar, cast


# =============================================================================
# Event Types
# =============================================================================

class AnalysisEventType(str, Enum):
    """Types of analysis events."""

    # Parsing
    PARSE_COMPLETED = "parse.completed"
    PARSE_FAILED = "parse.failed"

    # Analyses
    LINT_COMPLETED = "lint.completed"
    GROUNDING_COMPLETED = "grounding.completed"
    GROUNDING_CAP_EXCEEDED = "grounding.cap_exceeded"
    REALIZE_COMPLETED = "realize.completed"
    REALIZE_REJECTED = "realize.rejected"
    TEMPORAL_RESOLVED = "temporal.resolved"

    # Commands
    COMMAND_COMPLETED = "command.completed"

    # Input
    VALIDATION_FAILURE = "validation.failure"

    # System
    SYSTEM_STARTUP = "system.startup"
    SYSTEM_SHUTDOWN = "system.shutdown"
    SYSTEM_ERROR = "system.error"


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


# =============================================================================
# Structured Log Entry
# =============================================================================

@dataclass
class LogEntry:
    """Structured log entry."""

    timestamp: str
    level: str
    event_type: str
    message: str
    data: Optional[dict] = None
    error_type: Optional[str] = None
    error_message: Optional[str] = None
    duration_ms: Optional[float] = None

    def to_dict(self) -> dict:
        """Convert to dictionary, excluding None values."""
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str)


# =============================================================================
# JSON Log Formatter
# =============================================================================

class StructuredFormatter(logging.Formatter):
    """JSON formatter for structured logging."""

    EXTRA_FIELDS = ("event_type", "data", "error_type", "error_message", "duration_ms")

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for key in self.EXTRA_FIELDS:
            value = getattr(record, key, None)
            if value is not None:
                entry[key] = value
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


# =============================================================================
# Analysis Logger
# =============================================================================

class AnalysisLogger:
    """
    Structured logger for analysis events.

    Reports go to stdout; everything logged here goes to stderr so report
    output stays machine-readable.
    """

    def __init__(
        self,
        name: str = "upo_lint",
        level: str = "WARNING",
        json_output: bool = True,
    ):
        """
        Initialize the logger.

        Args:
            name: Logger name
            level: Minimum log level
            json_output: Whether to use JSON formatting
        """
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
        self.logger.handlers.clear()
        self.logger.propagate = False

        handler = logging.StreamHandler(sys.stderr)
        if json_output:
            handler.setFormatter(StructuredFormatter())
        else:
            handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            ))
        self.logger.addHandler(handler)

    def _log(
        self,
        level: int,
        event_type: AnalysisEventType,
        message: str,
        data: Optional[dict] = None,
        error: Optional[Exception] = None,
        duration_ms: Optional[float] = None,
    ) -> None:
        """Internal logging method."""
        extra: dict[str, Any] = {
            "event_type": event_type.value,
            "data": data,
            "duration_ms": duration_ms,
        }
        if error:
            extra["error_type"] = type(error).__name__
            extra["error_message"] = str(error)
        self.logger.log(level, message, extra=extra,
                        exc_info=error if level >= logging.ERROR else None)

    # =========================================================================
    # Parsing
    # =========================================================================

    def parse_completed(self, source: str, frames: int, axioms: int) -> None:
        self._log(
            logging.DEBUG,
            AnalysisEventType.PARSE_COMPLETED,
            f"Parsed {source}: {frames} frames, {axioms} axioms",
            data={"source": source, "frames": frames, "axioms": axioms},
        )

    def parse_failed(self, source: str, errors: int) -> None:
        self._log(
            logging.WARNING,
            AnalysisEventType.PARSE_FAILED,
            f"Parse of {source} failed with {errors} error(s)",
            data={"source": source, "errors": errors},
        )

    # =========================================================================
    # Analyses
    # =========================================================================

    def lint_completed(self, findings: int, errors: int) -> None:
        self._log(
            logging.DEBUG,
            AnalysisEventType.LINT_COMPLETED,
            f"Lint produced {findings} finding(s), {errors} error(s)",
            data={"findings": findings, "errors": errors},
        )

    def grounding_completed(self, ice: str, overall: str, nodes: int, depth: int) -> None:
        self._log(
            logging.DEBUG,
            AnalysisEventType.GROUNDING_COMPLETED,
            f"Grounded {ice}: {overall}",
            data={"ice": ice, "overall": overall, "nodes": nodes, "max_depth": depth},
        )

    def grounding_cap_exceeded(self, ice: str, nodes: int, cap: int) -> None:
        self._log(
            logging.ERROR,
            AnalysisEventType.GROUNDING_CAP_EXCEEDED,
            f"Grounding of {ice} exceeded the node cap ({nodes} > {cap})",
            data={"ice": ice, "nodes": nodes, "cap": cap},
        )

    def realize_completed(self, blueprint: str, individual: str, added: bool) -> None:
        self._log(
            logging.INFO,
            AnalysisEventType.REALIZE_COMPLETED,
            f"Realized {blueprint} with {individual}",
            data={"blueprint": blueprint, "individual": individual, "added": added},
        )

    def realize_rejected(self, blueprint: str, individual: str, failing: str) -> None:
        self._log(
            logging.WARNING,
            AnalysisEventType.REALIZE_REJECTED,
            f"{individual} does not conform to {blueprint}",
            data={"blueprint": blueprint, "individual": individual, "failing": failing},
        )

    def temporal_resolved(self, mode: str, day: str, utterance: str, first_instant: str) -> None:
        self._log(
            logging.DEBUG,
            AnalysisEventType.TEMPORAL_RESOLVED,
            f"Resolved {mode} {day} at {utterance} to {first_instant}",
            data={"mode": mode, "day": day, "utterance": utterance,
                  "first_instant": first_instant},
        )

    def validation_failure(self, field: str, reason: str) -> None:
        self._log(
            logging.WARNING,
            AnalysisEventType.VALIDATION_FAILURE,
            f"Validation failed for field '{field}': {reason}",
            data={"field": field, "reason": reason},
        )

    # =========================================================================
    # System Events
    # =========================================================================

    def system_startup(self, version: str) -> None:
        self._log(
            logging.INFO,
            AnalysisEventType.SYSTEM_STARTUP,
            f"upo-lint tool server starting (version {version})",
            data={"version": version},
        )

    def system_shutdown(self) -> None:
        self._log(
            logging.INFO,
            AnalysisEventType.SYSTEM_SHUTDOWN,
            "upo-lint tool server shutting down",
        )

    def system_error(self, error: Exception, context: str = "") -> None:
        self._log(
            logging.ERROR,
            AnalysisEventType.SYSTEM_ERROR,
            f"System error{': ' + context if context else ''}",
            error=error,
        )


# =============================================================================
# Global Logger Instance
# =============================================================================

_logger: Optional[AnalysisLogger] = None


def get_logger() -> AnalysisLogger:
    """Get or create the global logger."""
    global _logger
    if _logger is None:
        _logger = AnalysisLogger(
            level=os.getenv("UPO_LOG_LEVEL", "WARNING"),
            json_output=os.getenv("UPO_LOG_FORMAT", "json").lower() == "json",
        )
    return _logger


def configure_logger(level: str = "WARNING", json_output: bool = True) -> AnalysisLogger:
    """Configure and return the global logger."""
    global _logger
    _logger = AnalysisLogger(level=level, json_output=json_output)
    return _logger


# =============================================================================
# Logging Decorator
# =============================================================================

F = TypeVar("F", bound=Callable[..., Any])


def log_operation(event_type: AnalysisEventType) -> Callable[[F], F]:
    """Decorator to log function execution with timing."""
    def decorator(func: F) -> F:
        @wraps(func)
        async def async_wrapper(*args: Any, **kwargs: Any) -> Any:
            logger = get_logger()
            start_time = time.monotonic()
            try:
                result = await func(*args, **kwargs)
            except Exception as e:
                logger._log(
                    logging.ERROR,
                    AnalysisEventType.SYSTEM_ERROR,
                    f"Operation failed: {func.__name__}",
                    error=e,
                    duration_ms=(time.monotonic() - start_time) * 1000,
                )
                raise
            logger._log(
                logging.DEBUG,
                event_type,
                f"Operation completed: {func.__name__}",
                duration_ms=(time.monotonic() - start_time) * 1000,
            )
            return result

        @wraps(func)
        def sync_wrapper(*args: Any, **kwargs: Any) -> Any:
            logger = get_logger()
            start_time = time.monotonic()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger._log(
                    logging.DEBUG,
                    event_type,
                    f"Operation raised: {func.__name__}",
                    error=e,
                    duration_ms=(time.monotonic() - start_time) * 1000,
                )
                raise
            logger._log(
                logging.DEBUG,
                event_type,
                f"Operation completed: {func.__name__}",
                duration_ms=(time.monotonic() - start_time) * 1000,
            )
            return result

        import asyncio
        if asyncio.iscoroutinefunction(func):
            return cast(F, async_wrapper)
        return cast(F, sync_wrapper)

    return decorator
