"""
Tests for the logging module - event types, structured output and the timing decorator.
"""

import json
import logging

import pytest

from upo_lint.logging import (
    AnalysisEventType,
    AnalysisLogger,
    LogEntry,
    LogLevel,
    StructuredFormatter,
    configure_logger,
    get_logger,
    log_operation,
)


def _records(err: str) -> list[dict]:
    return [json.loads(line) for line in err.splitlines() if line.strip()]


class TestAnalysisEventType:
    def test_dotted_names(self):
        assert AnalysisEventType.PARSE_COMPLETED == "parse.completed"
        assert AnalysisEventType.GROUNDING_CAP_EXCEEDED == "grounding.cap_exceeded"
        assert AnalysisEventType.TEMPORAL_RESOLVED == "temporal.resolved"

    def test_log_levels_exist(self):
        assert [level.value for level in LogLevel] == [
            "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class TestLogEntry:
    def test_to_dict_drops_none(self):
        entry = LogEntry(timestamp="t", level="INFO", event_type="e", message="m")
        assert entry.to_dict() == {"timestamp": "t", "level": "INFO",
                                   "event_type": "e", "message": "m"}

    def test_to_json(self):
        entry = LogEntry(timestamp="t", level="INFO", event_type="e", message="m",
                         data={"n": 1})
        assert json.loads(entry.to_json())["data"] == {"n": 1}


class TestStructuredFormatter:
    def test_includes_extra_fields(self):
        record = logging.LogRecord("upo_lint", logging.INFO, __file__, 1, "hello", (), None)
        record.event_type = "parse.completed"
        record.data = {"frames": 3}
        entry = json.loads(StructuredFormatter().format(record))
        assert entry["message"] == "hello"
        assert entry["event_type"] == "parse.completed"
        assert entry["data"] == {"frames": 3}
        assert "error_type" not in entry


class TestAnalysisLogger:
    def test_writes_json_to_stderr(self, capsys):
        logger = AnalysisLogger(level="DEBUG")
        logger.parse_completed("doc.upo", 4, 10)

        captured = capsys.readouterr()
        assert captured.out == ""
        [record] = _records(captured.err)
        assert record["event_type"] == "parse.completed"
        assert record["data"] == {"source": "doc.upo", "frames": 4, "axioms": 10}

    def test_level_filters_debug(self, capsys):
        logger = AnalysisLogger(level="WARNING")
        logger.grounding_completed("Ice", "Grounded", 5, 2)
        logger.parse_failed("doc.upo", 2)

        [record] = _records(capsys.readouterr().err)
        assert record["event_type"] == "parse.failed"
        assert record["level"] == "WARNING"

    def test_text_format(self, capsys):
        logger = AnalysisLogger(level="INFO", json_output=False)
        logger.realize_completed("Blueprint1", "civic001", True)
        err = capsys.readouterr().err
        assert "Realized Blueprint1 with civic001" in err
        assert not err.startswith("{")

    def test_system_error_carries_exception(self, capsys):
        logger = AnalysisLogger(level="ERROR")
        logger.system_error(RuntimeError("boom"), "check")

        [record] = _records(capsys.readouterr().err)
        assert record["error_type"] == "RuntimeError"
        assert record["error_message"] == "boom"
        assert record["message"] == "System error: check"

    @pytest.mark.parametrize("call, event", [
        (lambda lg: lg.lint_completed(3, 1), "lint.completed"),
        (lambda lg: lg.grounding_cap_exceeded("I", 11, 10), "grounding.cap_exceeded"),
        (lambda lg: lg.realize_rejected("B", "i", "x some Y"), "realize.rejected"),
        (lambda lg: lg.temporal_resolved("next", "Friday", "a", "b"), "temporal.resolved"),
        (lambda lg: lg.validation_failure("ice", "bad"), "validation.failure"),
        (lambda lg: lg.system_startup("0.1.0"), "system.startup"),
        (lambda lg: lg.system_shutdown(), "system.shutdown"),
    ])
    def test_event_methods(self, capsys, call, event):
        call(AnalysisLogger(level="DEBUG"))
        [record] = _records(capsys.readouterr().err)
        assert record["event_type"] == event


class TestGlobalLogger:
    def test_get_logger_is_cached(self):
        assert get_logger() is get_logger()

    def test_configure_logger_replaces(self):
        first = get_logger()
        second = configure_logger("DEBUG")
        assert second is not first
        assert get_logger() is second
        assert second.logger.level == logging.DEBUG

    def test_env_level(self, monkeypatch):
        monkeypatch.setenv("UPO_LOG_LEVEL", "ERROR")
        assert get_logger().logger.level == logging.ERROR


class TestLogOperation:
    def test_sync_function(self, capsys):
        configure_logger("DEBUG")

        @log_operation(AnalysisEventType.LINT_COMPLETED)
        def work(x):
            return x * 2

        assert work(21) == 42
        [record] = _records(capsys.readouterr().err)
        assert record["message"] == "Operation completed: work"
        assert record["duration_ms"] >= 0

    def test_sync_function_reraises(self, capsys):
        configure_logger("DEBUG")

        @log_operation(AnalysisEventType.LINT_COMPLETED)
        def broken():
            raise ValueError("nope")

        with pytest.raises(ValueError):
            broken()
        [record] = _records(capsys.readouterr().err)
        assert record["error_type"] == "ValueError"

    async def test_async_function(self, capsys):
        configure_logger("DEBUG")

        @log_operation(AnalysisEventType.GROUNDING_COMPLETED)
        async def work():
            return "done"

        assert await work() == "done"
        [record] = _records(capsys.readouterr().err)
        assert record["event_type"] == "grounding.completed"

    async def test_async_failure_logs_error(self, capsys):
        configure_logger("DEBUG")

        @log_operation(AnalysisEventType.GROUNDING_COMPLETED)
        async def broken():
            raise RuntimeError("boom")

        with pytest.raises(RuntimeError):
            await broken()
        records = _records(capsys.readouterr().err)
        assert records[0]["event_type"] == "system.error"
        assert records[0]["level"] == "ERROR"
