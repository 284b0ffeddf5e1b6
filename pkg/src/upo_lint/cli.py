"""
Command-line entry point.

    upo check PATH [--json] [--no-prelude]
    upo trace PATH ICE [--no-prelude]
    upo realize PATH BLUEPRINT INDIVIDUAL --out PATH [--no-prelude]
    upo resolve PATH ICE [--at YYYY-MM-DDThh:mm:ss] [--json] [--no-prelude]

Exit codes: 0 no Errors, 1 lint/grounding Errors or a nonconformant
individual, 2 parse, input or I/O failure.
"""

from __future__ import annotations

import argparse
import errno
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

from . import __version__
from .aboutness import IceKind, classify_ice
from .config import get_settings
from .errors import EXIT_FINDINGS, EXIT_OK, WrongKind, classify_error
from .grounding import GroundingReport, ground, realize
from .linter import Finding, has_errors, lint
from .logging import AnalysisEventType, configure_logger, log_operation
from .models import FindingModel, GroundingReportModel, Report, ResolvedIntervalModel
from .ontology import ClassExpression, Ontology
from .parser import ParseFailure, parse_file, render_expression, serialize
from .prelude import base_ontology
from .render import Renderer, use_color
from .temporal import (
    CycleSpec,
    IndexicalMode,
    ResolvedInterval,
    TemporalContext,
    Weekday,
    designation_ontology,
    emit_designation_expression,
    resolve_indexical,
)
from .validation import require_valid_timestamp, validate_source_path


# =============================================================================
# Analyses shared with the tool server
# =============================================================================

@dataclass(frozen=True)
class CheckResult:
    findings: list[Finding]
    reports: list[GroundingReport]

    @property
    def exit_code(self) -> int:
        return EXIT_FINDINGS if has_errors(self.findings) else EXIT_OK

    def to_report(self, source: str) -> Report:
        return Report(
            tool_version=__version__,
            input=source,
            findings=[FindingModel.from_finding(f) for f in self.findings],
            grounding=[GroundingReportModel.from_report(r) for r in self.reports],
            exit_code=self.exit_code,
        )


def check_ontology(ontology: Ontology) -> CheckResult:
    """Ground every ICE and lint the ontology."""
    reports = [ground(ontology, ice) for ice in sorted(ontology.ices)]
    findings = lint(ontology, {r.ice: r for r in reports})
    return CheckResult(findings, reports)


@dataclass(frozen=True)
class Resolution:
    ice: str
    interval: ResolvedInterval
    designation: ClassExpression

    def to_report(self, source: str) -> Report:
        return Report(
            tool_version=__version__,
            input=source,
            resolved=ResolvedIntervalModel.from_interval(
                self.interval, render_expression(self.designation)),
            exit_code=EXIT_OK,
        )


def resolve_designation(ontology: Ontology, ice: str, at: Optional[str] = None) -> Resolution:
    """
    Resolve a TemporalExpression ICE's Mode and Cycle at an utterance instant.

    Args:
        ontology: Ontology declaring the ICE and its cycle day class
        ice: A TemporalExpression ICE with Mode and Cycle keys
        at: Utterance timestamp; the current UTC second when omitted

    Raises:
        UnknownName: If the ICE or the designation vocabulary is missing
        WrongKind: If the ICE is not a TemporalExpression with Mode and Cycle
        InvalidTimestamp: If `at` is malformed
    """
    ontology.require("ice", ice)
    kind = classify_ice(ontology, ice).kind
    if kind is not IceKind.TEMPORAL_EXPRESSION:
        raise WrongKind(ice, "TemporalExpression", kind.value)
    decl = ontology.ices[ice]
    if decl.mode is None or decl.cycle is None:
        raise WrongKind(ice, "TemporalExpression with Mode and Cycle", "missing a key")

    if at is None:
        utterance = datetime.now(timezone.utc).replace(microsecond=0)
    else:
        utterance = require_valid_timestamp(at)
    ctx = TemporalContext(utterance, CycleSpec(Weekday(decl.cycle)))
    mode = IndexicalMode(decl.mode)

    interval = resolve_indexical(mode, ctx)
    extended = designation_ontology(ontology, mode, ctx)
    return Resolution(ice, interval, emit_designation_expression(mode, ctx, extended))


# =============================================================================
# Commands
# =============================================================================

def _renderer() -> Renderer:
    return Renderer(color=use_color(sys.stdout, get_settings().no_color))


def _use_prelude(args: argparse.Namespace) -> bool:
    return get_settings().prelude and not args.no_prelude


def load_ontology(path: str, use_prelude: bool = True) -> Ontology:
    """
    Read and parse a document, on top of the prelude unless disabled.

    Raises:
        FileNotFoundError: If the path is not a readable file
        ParseFailure: On any parse error
    """
    checked = validate_source_path(path)
    if not checked.is_valid:
        raise FileNotFoundError(errno.ENOENT, checked.error, path)
    return parse_file(path, base=base_ontology(use_prelude))


@log_operation(AnalysisEventType.COMMAND_COMPLETED)
def cmd_check(args: argparse.Namespace) -> int:
    ontology = load_ontology(args.path, _use_prelude(args))
    result = check_ontology(ontology)
    if args.json:
        print(result.to_report(args.path).to_json())
    else:
        renderer = _renderer()
        print(renderer.findings(args.path, result.findings))
        if result.reports:
            print(renderer.grounding_summary(result.reports))
    return result.exit_code


@log_operation(AnalysisEventType.COMMAND_COMPLETED)
def cmd_trace(args: argparse.Namespace) -> int:
    ontology = load_ontology(args.path, _use_prelude(args))
    print(_renderer().tree(ground(ontology, args.ice)))
    return EXIT_OK


@log_operation(AnalysisEventType.COMMAND_COMPLETED)
def cmd_realize(args: argparse.Namespace) -> int:
    use_prelude = _use_prelude(args)
    ontology = load_ontology(args.path, use_prelude)
    realized = realize(ontology, args.blueprint, args.individual)
    Path(args.out).write_text(serialize(realized, omit=base_ontology(use_prelude)),
                              encoding="utf-8")
    print(f"{args.blueprint} represents {args.individual}; wrote {args.out}")
    return EXIT_OK


@log_operation(AnalysisEventType.COMMAND_COMPLETED)
def cmd_resolve(args: argparse.Namespace) -> int:
    ontology = load_ontology(args.path, _use_prelude(args))
    resolution = resolve_designation(ontology, args.ice, args.at)
    if args.json:
        print(resolution.to_report(args.path).to_json())
    else:
        print(_renderer().resolved(args.ice, resolution.interval,
                                   render_expression(resolution.designation)))
    return EXIT_OK


# =============================================================================
# Argument Parsing
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upo",
        description="Lint ontologies of fictional, prescribed, simulated and future entities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-prelude", action="store_true",
                        help="do not load the builtin upper-level prelude")

    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common],
                                help="lint a document and ground every ICE")
    check.add_argument("path")
    check.add_argument("--json", action="store_true", help="print the JSON report")
    check.set_defaults(handler=cmd_check)

    trace = commands.add_parser("trace", parents=[common],
                                help="print the grounding tree of one ICE")
    trace.add_argument("path")
    trace.add_argument("ice")
    trace.set_defaults(handler=cmd_trace)

    realize_cmd = commands.add_parser("realize", parents=[common],
                                      help="record an individual created from a blueprint")
    realize_cmd.add_argument("path")
    realize_cmd.add_argument("blueprint")
    realize_cmd.add_argument("individual")
    realize_cmd.add_argument("--out", required=True, help="where to write the updated document")
    realize_cmd.set_defaults(handler=cmd_realize)

    resolve = commands.add_parser("resolve", parents=[common],
                                  help="resolve a temporal expression at an utterance instant")
    resolve.add_argument("path")
    resolve.add_argument("ice")
    resolve.add_argument("--at", help="utterance instant YYYY-MM-DDThh:mm:ss (default: now, UTC)")
    resolve.add_argument("--json", action="store_true", help="print the JSON report")
    resolve.set_defaults(handler=cmd_resolve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    load_dotenv()
    settings = get_settings()
    configure_logger(settings.log_level, settings.log_format == "json")

    args = build_parser().parse_args(argv)
    try:
        return int(args.handler(args))
    except ParseFailure as e:
        print(Renderer().parse_failure(e), file=sys.stderr)
        return classify_error(e, args.command).exit_code
    except Exception as e:
        classified = classify_error(e, args.command)
        print(f"upo {args.command}: {classified.details or classified.user_message}",
              file=sys.stderr)
        return classified.exit_code


if __name__ == "__main__":
    sys.exit(main())
