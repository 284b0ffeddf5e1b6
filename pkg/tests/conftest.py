import os
from pathlib import Path
from typing import Callable, Generator
from unittest.mock import patch

import pytest

import upo_lint.config as config_module
import upo_lint.logging as logging_module
from upo_lint.ontology import Ontology
from upo_lint.parser import parse, parse_file
from upo_lint.prelude import load_prelude

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def reset_globals() -> Generator[None, None, None]:
    """Give every test fresh settings and a fresh logger."""
    config_module._settings = None
    logging_module._logger = None
    yield
    config_module._settings = None
    logging_module._logger = None


@pytest.fixture
def clean_env() -> Generator[None, None, None]:
    """Remove UPO_* variables so defaults apply."""
    cleaned = {k: v for k, v in os.environ.items() if not k.startswith("UPO_")}
    with patch.dict(os.environ, cleaned, clear=True):
        yield


@pytest.fixture
def fixture_path() -> Callable[[str], Path]:
    """Path of a fixture document by file name."""
    return lambda name: FIXTURES / name


@pytest.fixture
def prelude() -> Ontology:
    return load_prelude()


@pytest.fixture
def load_fixture(prelude: Ontology) -> Callable[[str], Ontology]:
    """Parse a fixture on top of the prelude."""
    return lambda name: parse_file(FIXTURES / name, base=prelude)


@pytest.fixture
def parse_text(prelude: Ontology) -> Callable[[str], Ontology]:
    """Parse inline source on top of the prelude."""
    return lambda text: parse(text, base=prelude)


@pytest.fixture
def superman(load_fixture: Callable[[str], Ontology]) -> Ontology:
    return load_fixture("superman.upo")


@pytest.fixture
def honda(load_fixture: Callable[[str], Ontology]) -> Ontology:
    return load_fixture("honda.upo")


@pytest.fixture
def redteam(load_fixture: Callable[[str], Ontology]) -> Ontology:
    return load_fixture("redteam.upo")


@pytest.fixture
def friday(load_fixture: Callable[[str], Ontology]) -> Ontology:
    return load_fixture("friday.upo")
