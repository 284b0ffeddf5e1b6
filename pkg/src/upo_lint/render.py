"""
Human-readable rendering of findings, grounding trees and resolutions.
"""

from typing import Iterable, Optional, TextIO

from .grounding import GroundingNode, GroundingReport, GroundingStatus
from .linter import Finding, Severity
from .parser import ParseFailure
from .temporal import ResolvedInterval
from .validation import format_timestamp

RESET = "\033[0m"
BOLD = "\033[1m"

SEVERITY_COLORS = {
    Severity.ERROR: "\033[31m",
    Severity.WARNING: "\033[33m",
    Severity.INFO: "\033[36m",
}

STATUS_COLORS = {
    GroundingStatus.ACTUAL: "\033[32m",
    GroundingStatus.DEFINED: "\033[34m",
    GroundingStatus.UNGROUNDED: "\033[31m",
    GroundingStatus.CYCLIC: "\033[33m",
    GroundingStatus.EMPTY: "\033[35m",
}


def use_color(stream: TextIO, no_color: bool) -> bool:
    """ANSI only on a terminal and only when UPO_NO_COLOR is unset."""
    isatty = getattr(stream, "isatty", None)
    return not no_color and bool(isatty and isatty())


class Renderer:
    def __init__(self, color: bool = False) -> None:
        self.color = color

    def paint(self, text: str, code: Optional[str]) -> str:
        if not self.color or code is None:
            return text
        return f"{code}{text}{RESET}"

    def findings(self, source: str, findings: Iterable[Finding]) -> str:
        lines = []
        counts = {severity: 0 for severity in Severity}
        for f in findings:
            counts[f.severity] += 1
            where = f"{source}:{f.span}" if f.span else source
            severity = self.paint(f.severity.value.lower(), SEVERITY_COLORS[f.severity])
            lines.append(f"{where}: {severity} {f.rule} {f.rule_name}: {f.message}")
        summary = ", ".join(f"{n} {s.value.lower()}(s)" for s, n in counts.items())
        lines.append(self.paint(summary, BOLD))
        return "\n".join(lines)

    def grounding_summary(self, reports: Iterable[GroundingReport]) -> str:
        lines = []
        for r in reports:
            empty = " (necessarily empty)" if r.necessarily_empty else ""
            lines.append(f"{r.ice}: {r.overall.value}{empty}, depth {r.max_depth}")
        return "\n".join(lines)

    def tree(self, report: GroundingReport) -> str:
        header = f"{report.ice}: {report.overall.value}"
        if report.necessarily_empty:
            header += " (necessarily empty)"
        lines = [self.paint(header, BOLD)]
        self._node(report.root, "", True, lines, root=True)
        return "\n".join(lines)

    def _node(self, node: GroundingNode, prefix: str, last: bool, lines: list[str],
              root: bool = False) -> None:
        status = self.paint(f"[{node.status.value}]", STATUS_COLORS[node.status])
        note = f"  ({node.note})" if node.note else ""
        label = f"{node.subject} {status}{note}"
        if root:
            lines.append(label)
            child_prefix = ""
        else:
            lines.append(f"{prefix}{'└── ' if last else '├── '}{label}")
            child_prefix = prefix + ("    " if last else "│   ")
        for i, child in enumerate(node.children):
            self._node(child, child_prefix, i == len(node.children) - 1, lines)

    def resolved(self, ice: str, interval: ResolvedInterval, designation: str) -> str:
        mode = interval.mode.value if interval.mode else ""
        return "\n".join([
            self.paint(f"{ice}: {mode} {interval.designated_class}".rstrip(), BOLD),
            f"first instant: {format_timestamp(interval.first_instant)}",
            f"last instant:  {format_timestamp(interval.last_instant)}",
            f"designates only: {designation}",
        ])

    def parse_failure(self, failure: ParseFailure) -> str:
        return "\n".join(f"{failure.source}:{error}" for error in failure.errors)
