"""Shared fixtures for tool tests."""

import pytest

from upo_lint.ontology import Ontology


class MockFastMCP:
    def __init__(self):
        self.tools = {}

    def tool(self, name=None):
        def decorator(func):
            tool_name = name or func.__name__
            self.tools[tool_name] = func
            return func
        return decorator


@pytest.fixture
def mock_mcp():
    return MockFastMCP()


@pytest.fixture
def prelude_factory(prelude: Ontology):
    return lambda: prelude


@pytest.fixture
def fixture_source(fixture_path):
    """Source text of a fixture document."""
    return lambda name: fixture_path(name).read_text(encoding="utf-8")
