"""
upo-lint - aboutness linting for ontologies of unreal and future entities

Features:
- Parser and canonical serializer for the .upo frame language
- Grounding of ICE targets in actual classes, with cycle and emptiness checks
- Closed-world blueprint realization
- Resolution of indexical temporal designations
- Lint rules R1-R5 with JSON and text reports
"""

__version__ = "0.1.0"

# Model
from .ontology import (
    AboutnessAssertion,
    ConstraintForm,
    Ontology,
    Relation,
    SourceSpan,
    are_disjoint,
    instantiation_closure,
    is_about_view,
)

# Parsing
from .parser import (
    ParseError,
    ParseErrorKind,
    ParseFailure,
    parse,
    parse_class_expression,
    parse_file,
    serialize,
)
from .prelude import load_prelude

# Analyses
from .aboutness import IceKind, classify_ice, expected_relation
from .grounding import GroundingReport, ground, realize, satisfies, structurally_empty
from .linter import Finding, Severity, lint
from .temporal import (
    CycleSpec,
    IndexicalMode,
    ResolvedInterval,
    TemporalContext,
    check_precedence,
    emit_designation_expression,
    resolve_indexical,
)

# Logging
from .logging import AnalysisEventType, AnalysisLogger, configure_logger, get_logger

# Error handling
from .errors import ClassifiedError, ErrorCategory, UpoError, classify_error, safe_error_response

__all__ = [
    "__version__",

    # Model
    "AboutnessAssertion",
    "ConstraintForm",
    "Ontology",
    "Relation",
    "SourceSpan",
    "are_disjoint",
    "instantiation_closure",
    "is_about_view",

    # Parsing
    "ParseError",
    "ParseErrorKind",
    "ParseFailure",
    "parse",
    "parse_class_expression",
    "parse_file",
    "serialize",
    "load_prelude",

    # Analyses
    "IceKind",
    "classify_ice",
    "expected_relation",
    "GroundingReport",
    "ground",
    "realize",
    "satisfies",
    "structurally_empty",
    "Finding",
    "Severity",
    "lint",
    "CycleSpec",
    "IndexicalMode",
    "ResolvedInterval",
    "TemporalContext",
    "check_precedence",
    "emit_designation_expression",
    "resolve_indexical",

    # Logging
    "AnalysisEventType",
    "AnalysisLogger",
    "configure_logger",
    "get_logger",

    # Error handling
    "ClassifiedError",
    "ErrorCategory",
    "UpoError",
    "classify_error",
    "safe_error_response",
]
