"""
The builtin upper-level prelude.

Documents are parsed on top of this ontology unless the prelude is turned
off (`--no-prelude` or UPO_NO_PRELUDE).
"""

from functools import lru_cache
from importlib import resources
from typing import Optional

from .ontology import Ontology

PRELUDE_RESOURCE = "prelude.upo"


def prelude_text() -> str:
    """Source text of the prelude."""
    return resources.files("upo_lint").joinpath(PRELUDE_RESOURCE).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def load_prelude() -> Ontology:
    """
    Parse the prelude once per process.

    Spans are dropped so findings never point into the prelude file.
    """
    from .parser import parse

    parsed = parse(prelude_text(), source=PRELUDE_RESOURCE)
    return Ontology(
        classes=parsed.classes,
        properties=parsed.properties,
        individuals=parsed.individuals,
        ices=parsed.ices,
        axioms=parsed.axioms,
    )


def base_ontology(use_prelude: bool) -> Optional[Ontology]:
    """The ontology documents are parsed against."""
    return load_prelude() if use_prelude else None
