"""
Tool-server tools for the four analyses.

Each tool takes ontology source text rather than a path and returns a JSON
string; failures return the safe error payload.
"""

import json
from typing import Any, Callable, Optional

from mcp.server.fastmcp import FastMCP

from ..cli import check_ontology as run_check
from ..cli import resolve_designation as run_resolve
from ..errors import safe_error_response
from ..grounding import ground, realize
from ..models import (
    CheckParams,
    GroundingReportModel,
    RealizeParams,
    ResolveParams,
    SourceParams,
    TraceParams,
)
from ..ontology import Ontology
from ..parser import ParseFailure, parse, serialize

SOURCE_NAME = "<source>"


def _error(error: Exception, context: str) -> str:
    response: dict[str, Any] = safe_error_response(error, context)
    if isinstance(error, ParseFailure):
        response["parse_errors"] = [str(e) for e in error.errors]
    return json.dumps(response, indent=2)


def register_analysis_tools_lazy(mcp: FastMCP, get_prelude: Callable[[], Ontology]) -> None:
    """Register the analysis tools; the prelude is fetched when a tool runs."""

    def load(params: SourceParams) -> tuple[Ontology, Optional[Ontology]]:
        base = get_prelude() if params.use_prelude else None
        return parse(params.source, base=base, source=SOURCE_NAME), base

    @mcp.tool()
    async def check_ontology(source: str, use_prelude: bool = True) -> str:
        """Lint an ontology (rules R1-R5) and ground every ICE."""
        try:
            params = CheckParams(source=source, use_prelude=use_prelude)
            ontology, _ = load(params)
            return run_check(ontology).to_report(SOURCE_NAME).to_json()
        except Exception as e:
            return _error(e, "check_ontology")

    @mcp.tool()
    async def trace_grounding(source: str, ice: str, use_prelude: bool = True) -> str:
        """Decompose one ICE's aboutness target into its grounding tree."""
        try:
            params = TraceParams(source=source, ice=ice, use_prelude=use_prelude)
            ontology, _ = load(params)
            report = GroundingReportModel.from_report(ground(ontology, params.ice))
            return json.dumps(report.model_dump(mode="json"), indent=2)
        except Exception as e:
            return _error(e, "trace_grounding")

    @mcp.tool()
    async def realize_blueprint(
        source: str,
        blueprint: str,
        individual: str,
        use_prelude: bool = True,
    ) -> str:
        """Record that an individual was created according to a blueprint."""
        try:
            params = RealizeParams(source=source, blueprint=blueprint,
                                   individual=individual, use_prelude=use_prelude)
            ontology, base = load(params)
            realized = realize(ontology, params.blueprint, params.individual)
            return json.dumps({
                "success": True,
                "blueprint": params.blueprint,
                "individual": params.individual,
                "source": serialize(realized, omit=base),
            }, indent=2)
        except Exception as e:
            return _error(e, "realize_blueprint")

    @mcp.tool()
    async def resolve_designation(
        source: str,
        ice: str,
        at: Optional[str] = None,
        use_prelude: bool = True,
    ) -> str:
        """Resolve a temporal expression (Mode/Cycle) at an utterance instant, UTC."""
        try:
            params = ResolveParams(source=source, ice=ice, at=at, use_prelude=use_prelude)
            ontology, _ = load(params)
            return run_resolve(ontology, params.ice, params.at).to_report(SOURCE_NAME).to_json()
        except Exception as e:
            return _error(e, "resolve_designation")
