"""
Lint rules for aboutness modeling.

This module provides:
- R1 no-dummy-instances: no instance-level aboutness facts on ICEs
- R2 universal-constraint: aboutness targets are "only", never "some"
- R3 case-relation: the relation matches the ICE kind
- R4 groundedness: every target grounds
- R5 necessary-emptiness: structurally empty targets are reported
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

from .aboutness import IceKind, classify_ice, expected_relation
from .errors import UpoError
from .grounding import GroundingReport, OverallStatus, ground, satisfies, target_of
from .logging import get_logger
from .ontology import (
    AboutnessAxiom,
    ConstraintForm,
    Ontology,
    SourceSpan,
    is_about_family,
)


class Severity(str, Enum):
    ERROR = "Error"
    WARNING = "Warning"
    INFO = "Info"


RULE_NAMES = {
    "R1": "no-dummy-instances",
    "R2": "universal-constraint",
    "R3": "case-relation",
    "R4": "groundedness",
    "R5": "necessary-emptiness",
}


@dataclass(frozen=True)
class Finding:
    rule: str
    severity: Severity
    subject: str
    message: str
    span: Optional[SourceSpan] = None
    # ICE whose grounding report backs the finding
    trace: Optional[str] = None

    @property
    def rule_name(self) -> str:
        return RULE_NAMES[self.rule]


def _sort_key(finding: Finding) -> tuple:
    position = (0, finding.span) if finding.span is not None else (1, SourceSpan(1, 1))
    return (*position, finding.rule, finding.subject, finding.message)


# =============================================================================
# Rules
# =============================================================================

def _dummy_instances(ontology: Ontology, ice: str, kind: IceKind) -> list[Finding]:
    findings = []
    for fact in ontology.facts_about(ice):
        if is_about_family(ontology, fact.prop):
            findings.append(Finding(
                "R1", Severity.ERROR, ice,
                f"{kind.value} '{ice}' is about the individual '{fact.obj}' via '{fact.prop}'; "
                f"state a universal constraint on a class instead",
                ontology.span_of(fact),
            ))
    target = target_of(ontology, ice)
    for entry in ontology.represents_facts(ice):
        if kind is not IceKind.BLUEPRINT:
            message = (f"Represents-fact '{entry.individual}' on {kind.value} '{ice}'; "
                       f"only realized Blueprints may represent individuals")
        elif target is not None and not satisfies(ontology, entry.individual, target):
            message = (f"Represents-fact '{entry.individual}' on '{ice}' but the individual "
                       f"does not conform to the blueprint")
        else:
            continue
        findings.append(Finding("R1", Severity.ERROR, ice, message, ontology.span_of(entry)))
    return findings


def _constraint_and_relation(ontology: Ontology, ice: str, kind: IceKind) -> list[Finding]:
    findings = []
    expected = expected_relation(kind)
    for assertion in ontology.aboutness(ice):
        span = ontology.span_of(AboutnessAxiom(assertion))
        if assertion.constraint_form is ConstraintForm.EXISTENTIAL:
            findings.append(Finding(
                "R2", Severity.ERROR, ice,
                f"'{ice}' {assertion.relation.value} some instance; "
                f"use {assertion.relation.keyword}-only",
                span,
            ))
        if expected is not None and assertion.relation is not expected:
            findings.append(Finding(
                "R3", Severity.WARNING, ice,
                f"{kind.value} '{ice}' should be asserted with {expected.value}, "
                f"not {assertion.relation.value}",
                span,
            ))
    return findings


def _grounding(ontology: Ontology, report: GroundingReport) -> list[Finding]:
    ice = report.ice
    assertions = ontology.aboutness(ice)
    span = ontology.span_of(AboutnessAxiom(assertions[0])) if assertions else None
    findings = []
    if report.overall is OverallStatus.UNGROUNDED:
        findings.append(Finding(
            "R4", Severity.ERROR, ice,
            f"target of '{ice}' does not ground in actual classes", span, ice,
        ))
    elif report.overall is OverallStatus.CYCLIC:
        findings.append(Finding(
            "R4", Severity.WARNING, ice,
            f"target of '{ice}' grounds through a definition cycle", span, ice,
        ))
    if report.necessarily_empty:
        findings.append(Finding(
            "R5", Severity.INFO, ice,
            f"target of '{ice}' is necessarily empty; '{ice}' is not about anything",
            span, ice,
        ))
    return findings


# =============================================================================
# Entry Point
# =============================================================================

def lint(
    ontology: Ontology,
    reports: Optional[Mapping[str, GroundingReport]] = None,
) -> list[Finding]:
    """
    Run every rule over every ICE.

    Args:
        ontology: A well-formed ontology
        reports: Grounding reports already computed, keyed by ICE name

    Returns:
        Findings sorted by source position, then rule id
    """
    reports = dict(reports or {})
    findings: list[Finding] = []
    for ice in sorted(ontology.ices):
        kind = classify_ice(ontology, ice).kind
        findings.extend(_dummy_instances(ontology, ice, kind))
        findings.extend(_constraint_and_relation(ontology, ice, kind))

        report = reports.get(ice)
        if report is None:
            try:
                report = ground(ontology, ice)
            except UpoError:
                # ICEs without exactly one aboutness axiom are rejected by the parser
                continue
        findings.extend(_grounding(ontology, report))

    findings.sort(key=_sort_key)
    errors = sum(1 for f in findings if f.severity is Severity.ERROR)
    get_logger().lint_completed(len(findings), errors)
    return findings


def has_errors(findings: list[Finding]) -> bool:
    return any(f.severity is Severity.ERROR for f in findings)
