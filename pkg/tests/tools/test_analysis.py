import json
from unittest.mock import Mock

import pytest

from upo_lint.parser import parse
from upo_lint.server import get_prelude
from upo_lint.tools.analysis import register_analysis_tools_lazy

BLUEPRINT = "HondaCivicSLS2025Blueprint"


@pytest.fixture
def tools(mock_mcp, prelude_factory):
    register_analysis_tools_lazy(mock_mcp, prelude_factory)
    return mock_mcp.tools


class TestRegistration:
    def test_tools_registered(self, tools):
        assert set(tools) == {"check_ontology", "trace_grounding", "realize_blueprint",
                              "resolve_designation"}

    def test_prelude_fetched_lazily(self, mock_mcp, prelude):
        factory = Mock(return_value=prelude)
        register_analysis_tools_lazy(mock_mcp, factory)
        factory.assert_not_called()

    @pytest.mark.asyncio
    async def test_before_startup(self, mock_mcp, fixture_source):
        register_analysis_tools_lazy(mock_mcp, get_prelude)
        result = json.loads(await mock_mcp.tools["check_ontology"](fixture_source("honda.upo")))
        assert result["success"] is False
        assert result["error_code"] == "internal"


class TestCheckOntology:
    @pytest.mark.asyncio
    async def test_clean(self, tools, fixture_source):
        result = json.loads(await tools["check_ontology"](fixture_source("superman.upo")))
        assert result["input"] == "<source>"
        assert result["exit_code"] == 0
        assert result["findings"] == []
        assert [g["ice"] for g in result["grounding"]] == [
            "KryptonDescription", "SupermanDescription"]

    @pytest.mark.asyncio
    async def test_findings(self, tools, fixture_source):
        result = json.loads(await tools["check_ontology"](fixture_source("dummy_instance.upo")))
        assert result["exit_code"] == 1
        assert [f["rule"] for f in result["findings"]] == ["R1"]
        assert result["findings"][0]["span"]["line"] == 15

    @pytest.mark.asyncio
    async def test_parse_errors(self, tools, fixture_source):
        result = json.loads(await tools["check_ontology"](fixture_source("broken_paren.upo")))
        assert result["success"] is False
        assert result["error_code"] == "parse"
        assert result["parse_errors"] == ["8:32: Syntax: unclosed parenthesis"]

    @pytest.mark.asyncio
    async def test_without_prelude(self, tools, fixture_source):
        result = json.loads(await tools["check_ontology"](fixture_source("superman.upo"),
                                                          use_prelude=False))
        assert result["error_code"] == "parse"
        assert any("UnknownName" in e for e in result["parse_errors"])

    @pytest.mark.asyncio
    async def test_empty_source(self, tools):
        result = json.loads(await tools["check_ontology"](""))
        assert result["error_code"] == "validation"
        assert result["details"] == "Invalid fields: source"


class TestTraceGrounding:
    @pytest.mark.asyncio
    async def test_tree(self, tools, fixture_source):
        result = json.loads(await tools["trace_grounding"](fixture_source("honda.upo"), BLUEPRINT))
        assert result["ice"] == BLUEPRINT
        assert result["overall"] == "Grounded"
        assert result["root"]["note"] == "prescribes only"
        assert result["root"]["children"][0]["subject"] == "and"

    @pytest.mark.asyncio
    async def test_cyclic(self, tools, fixture_source):
        result = json.loads(await tools["trace_grounding"](fixture_source("cyclic.upo"),
                                                           "AlphaDescription"))
        assert result["overall"] == "Cyclic"

    @pytest.mark.asyncio
    async def test_unknown_ice(self, tools, fixture_source):
        result = json.loads(await tools["trace_grounding"](fixture_source("honda.upo"), "Nope"))
        assert result["error_code"] == "unknown_name"
        assert result["details"] == "'Nope' is not a declared ice"

    @pytest.mark.asyncio
    async def test_invalid_name(self, tools, fixture_source):
        result = json.loads(await tools["trace_grounding"](fixture_source("honda.upo"), "some"))
        assert result["error_code"] == "validation"


class TestRealizeBlueprint:
    @pytest.mark.asyncio
    async def test_conformant(self, tools, fixture_source, prelude):
        result = json.loads(await tools["realize_blueprint"](
            fixture_source("honda.upo"), BLUEPRINT, "civic001"))
        assert result["success"] is True
        assert result["individual"] == "civic001"
        realized = parse(result["source"], base=prelude)
        assert ("civic001",) == tuple(e.individual for e in realized.represents_facts(BLUEPRINT))

    @pytest.mark.asyncio
    async def test_nonconformant(self, tools, fixture_source):
        result = json.loads(await tools["realize_blueprint"](
            fixture_source("honda.upo"), BLUEPRINT, "civic_bad"))
        assert result["success"] is False
        assert result["error_code"] == "not_conformant"
        assert "fails 'has_continuant_part some Engine'" in result["details"]

    @pytest.mark.asyncio
    async def test_wrong_kind(self, tools, fixture_source):
        result = json.loads(await tools["realize_blueprint"](
            fixture_source("superman.upo"), "SupermanDescription", "alice"))
        assert result["error_code"] == "wrong_kind"


class TestResolveDesignation:
    @pytest.mark.asyncio
    async def test_next_friday(self, tools, fixture_source):
        result = json.loads(await tools["resolve_designation"](
            fixture_source("friday.upo"), "NextFridayExpr", at="2025-06-06T00:00:00"))
        assert result["exit_code"] == 0
        assert result["resolved"]["first_instant"] == "2025-06-13T00:00:00"
        assert result["resolved"]["mode"] == "next"
        assert "preceded_by value t_2025-06-06" in result["resolved"]["designation"]

    @pytest.mark.asyncio
    async def test_malformed_at(self, tools, fixture_source):
        result = json.loads(await tools["resolve_designation"](
            fixture_source("friday.upo"), "NextFridayExpr", at="2025-13-07T00:00:00"))
        assert result["error_code"] == "validation"
        assert result["details"] == "Invalid fields: at"

    @pytest.mark.asyncio
    async def test_not_temporal(self, tools, fixture_source):
        result = json.loads(await tools["resolve_designation"](
            fixture_source("honda.upo"), BLUEPRINT, at="2025-06-06T00:00:00"))
        assert result["error_code"] == "wrong_kind"
