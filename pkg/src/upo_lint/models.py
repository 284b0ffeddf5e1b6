"""
Pydantic models for reports and tool-server input.

This module provides:
- The JSON report schema (findings, grounding trees, resolved intervals)
- Strict parameter models for the tool server
"""

from __future__ import annotations

import json
from typing import Annotated, Optional

from pydantic import BaseModel, ConfigDict, Field, StringConstraints, field_validator

from .grounding import GroundingNode, GroundingReport
from .linter import Finding
from .ontology import SourceSpan
from .temporal import ResolvedInterval
from .validation import format_timestamp, validate_name, validate_timestamp

MAX_SOURCE_LENGTH = 1_000_000


# =============================================================================
# Base Models
# =============================================================================

class StrictBaseModel(BaseModel):
    """Base model that rejects unknown fields."""

    model_config = ConfigDict(
        extra='forbid',
        str_strip_whitespace=True,
        validate_default=True,
        use_enum_values=True,
    )


# =============================================================================
# Report Schema
# =============================================================================

class SpanModel(StrictBaseModel):
    line: int = Field(ge=1)
    column: int = Field(ge=1)
    length: int = Field(ge=0)

    @classmethod
    def from_span(cls, span: SourceSpan) -> SpanModel:
        return cls(line=span.line, column=span.column, length=span.length)


class FindingModel(StrictBaseModel):
    rule: str
    rule_name: str
    severity: str
    subject: str
    message: str
    span: Optional[SpanModel] = None
    trace: Optional[str] = None

    @classmethod
    def from_finding(cls, finding: Finding) -> FindingModel:
        return cls(
            rule=finding.rule,
            rule_name=finding.rule_name,
            severity=finding.severity.value,
            subject=finding.subject,
            message=finding.message,
            span=SpanModel.from_span(finding.span) if finding.span else None,
            trace=finding.trace,
        )


class GroundingNodeModel(StrictBaseModel):
    subject: str
    kind: str
    status: str
    note: str = ""
    repeated: bool = False
    children: list[GroundingNodeModel] = Field(default_factory=list)

    @classmethod
    def from_node(cls, node: GroundingNode) -> GroundingNodeModel:
        return cls(
            subject=node.subject,
            kind=node.kind.value,
            status=node.status.value,
            note=node.note,
            repeated=node.repeated,
            children=[cls.from_node(child) for child in node.children],
        )


GroundingNodeModel.model_rebuild()


class GroundingReportModel(StrictBaseModel):
    ice: str
    overall: str
    necessarily_empty: bool
    max_depth: int = Field(ge=0)
    node_count: int = Field(ge=0)
    root: GroundingNodeModel

    @classmethod
    def from_report(cls, report: GroundingReport) -> GroundingReportModel:
        return cls(
            ice=report.ice,
            overall=report.overall.value,
            necessarily_empty=report.necessarily_empty,
            max_depth=report.max_depth,
            node_count=report.node_count,
            root=GroundingNodeModel.from_node(report.root),
        )


class ResolvedIntervalModel(StrictBaseModel):
    first_instant: str
    last_instant: str
    designated_class: str
    mode: Optional[str] = None
    designation: Optional[str] = None

    @classmethod
    def from_interval(cls, interval: ResolvedInterval,
                      designation: Optional[str] = None) -> ResolvedIntervalModel:
        return cls(
            first_instant=format_timestamp(interval.first_instant),
            last_instant=format_timestamp(interval.last_instant),
            designated_class=interval.designated_class,
            mode=interval.mode.value if interval.mode else None,
            designation=designation,
        )


class Report(StrictBaseModel):
    """Everything one command reports; `resolved` only for resolution."""

    tool_version: str
    input: str
    findings: list[FindingModel] = Field(default_factory=list)
    grounding: list[GroundingReportModel] = Field(default_factory=list)
    resolved: Optional[ResolvedIntervalModel] = None
    exit_code: int = Field(ge=0, le=2)

    def to_json(self) -> str:
        """Deterministic JSON; `resolved` is omitted when absent."""
        data = self.model_dump(mode="json")
        if data["resolved"] is None:
            del data["resolved"]
        return json.dumps(data, indent=2)


# =============================================================================
# Tool-server Parameters
# =============================================================================

class SourceParams(StrictBaseModel):
    """An ontology given as .upo source text."""

    # kept verbatim so reported line numbers match the caller's text
    source: Annotated[
        str,
        StringConstraints(strip_whitespace=False, min_length=1, max_length=MAX_SOURCE_LENGTH),
    ] = Field(description="Ontology in .upo syntax")
    use_prelude: bool = Field(default=True, description="Parse on top of the builtin prelude")


def _checked_name(value: str, field_name: str) -> str:
    result = validate_name(value, field_name)
    if not result.is_valid:
        raise ValueError(result.error)
    return result.sanitized_value


class CheckParams(SourceParams):
    """Parameters for linting and grounding a whole ontology."""


class TraceParams(SourceParams):
    ice: str = Field(description="ICE whose target is decomposed")

    @field_validator('ice')
    @classmethod
    def validate_ice(cls, v: str) -> str:
        return _checked_name(v, "ice")


class RealizeParams(SourceParams):
    blueprint: str = Field(description="Blueprint ICE")
    individual: str = Field(description="Individual created according to the blueprint")

    @field_validator('blueprint', 'individual')
    @classmethod
    def validate_names(cls, v: str) -> str:
        return _checked_name(v, "name")


class ResolveParams(SourceParams):
    ice: str = Field(description="TemporalExpression ICE with Mode and Cycle")
    at: Optional[str] = Field(default=None,
                              description="Utterance instant, YYYY-MM-DDThh:mm:ss (UTC)")

    @field_validator('ice')
    @classmethod
    def validate_ice(cls, v: str) -> str:
        return _checked_name(v, "ice")

    @field_validator('at')
    @classmethod
    def validate_at(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return None
        result = validate_timestamp(v)
        if not result.is_valid:
            raise ValueError(result.error)
        return v.strip()


__all__ = [
    "StrictBaseModel",
    "SpanModel",
    "FindingModel",
    "GroundingNodeModel",
    "GroundingReportModel",
    "ResolvedIntervalModel",
    "Report",
    "SourceParams",
    "CheckParams",
    "TraceParams",
    "RealizeParams",
    "ResolveParams",
]
