"""
Error hierarchy and classification.

This module provides:
- The exceptions raised by the analyses (all rooted at UpoError)
- Error classification into categories and process exit codes
- Consistent error payloads for the tool server
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence

from .logging import get_logger


# =============================================================================
# Error Categories
# =============================================================================

class ErrorCategory(str, Enum):
    """Categories of errors with appropriate user messages."""

    # Input errors
    PARSE = "parse"
    UNKNOWN_NAME = "unknown_name"
    DUPLICATE_DECLARATION = "duplicate_declaration"
    ABOUTNESS = "aboutness"
    WRONG_KIND = "wrong_kind"
    INVALID_TIMESTAMP = "invalid_timestamp"
    VALIDATION = "validation"
    IO = "io"

    # Analysis outcomes
    NOT_CONFORMANT = "not_conformant"

    # Defects
    INTERNAL = "internal"
    UNKNOWN = "unknown"


# Exit codes of the command-line tool
EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_FAILURE = 2


SAFE_ERROR_MESSAGES = {
    ErrorCategory.PARSE: "The document could not be parsed.",
    ErrorCategory.UNKNOWN_NAME: "A referenced name is not declared.",
    ErrorCategory.DUPLICATE_DECLARATION: "A name is declared more than once.",
    ErrorCategory.ABOUTNESS: "The ICE does not carry exactly one aboutness axiom.",
    ErrorCategory.WRONG_KIND: "The named entity is of the wrong kind for this command.",
    ErrorCategory.INVALID_TIMESTAMP: "The timestamp is not a valid YYYY-MM-DDThh:mm:ss instant.",
    ErrorCategory.VALIDATION: "The request contains invalid data. Please check your input.",
    ErrorCategory.IO: "The file could not be read or written.",
    ErrorCategory.NOT_CONFORMANT: "The individual does not conform to the blueprint.",
    ErrorCategory.INTERNAL: "An internal error occurred.",
    ErrorCategory.UNKNOWN: "An unexpected error occurred.",
}


# =============================================================================
# Exceptions
# =============================================================================

class UpoError(Exception):
    """Base class for every error the analyses raise on purpose."""

    category: ErrorCategory = ErrorCategory.UNKNOWN
    exit_code: int = EXIT_FAILURE


class UnknownName(UpoError):
    category = ErrorCategory.UNKNOWN_NAME

    def __init__(self, name: str, category: str = "name") -> None:
        self.name = name
        self.expected = category
        super().__init__(f"'{name}' is not a declared {category}")


class DuplicateDeclaration(UpoError):
    category = ErrorCategory.DUPLICATE_DECLARATION

    def __init__(self, name: str, where: str) -> None:
        self.name = name
        super().__init__(f"'{name}' is declared more than once ({where})")


class NoAboutness(UpoError):
    category = ErrorCategory.ABOUTNESS

    def __init__(self, ice: str) -> None:
        self.ice = ice
        super().__init__(f"ICE '{ice}' has no aboutness axiom")


class MultipleAboutness(UpoError):
    category = ErrorCategory.ABOUTNESS

    def __init__(self, ice: str, count: int) -> None:
        self.ice = ice
        self.count = count
        super().__init__(f"ICE '{ice}' has {count} aboutness axioms; exactly one is allowed")


class WrongKind(UpoError):
    category = ErrorCategory.WRONG_KIND

    def __init__(self, name: str, expected: str, actual: str = "") -> None:
        self.name = name
        self.expected = expected
        detail = f" (it is {actual})" if actual else ""
        super().__init__(f"'{name}' is not a {expected}{detail}")


class InvalidTimestamp(UpoError):
    category = ErrorCategory.INVALID_TIMESTAMP

    def __init__(self, value: str, reason: str = "expected YYYY-MM-DDThh:mm:ss") -> None:
        self.value = value
        super().__init__(f"invalid timestamp '{value}': {reason}")


class NotConformant(UpoError):
    """An individual fails a blueprint's target; `path` leads to the failing part."""

    category = ErrorCategory.NOT_CONFORMANT
    exit_code = EXIT_FINDINGS

    def __init__(self, individual: str, blueprint: str, path: Sequence[str]) -> None:
        self.individual = individual
        self.blueprint = blueprint
        self.path = list(path)
        failing = self.path[-1] if self.path else "target"
        super().__init__(
            f"'{individual}' does not conform to '{blueprint}': fails '{failing}'"
        )


# =============================================================================
# Error Classification
# =============================================================================

@dataclass
class ClassifiedError:
    """A classified error with a user-facing message and exit code."""

    category: ErrorCategory
    user_message: str
    details: Optional[str] = None
    internal_message: Optional[str] = None
    exit_code: int = EXIT_FAILURE

    def to_response(self, include_details: bool = True) -> dict[str, Any]:
        """Convert to the tool-server response format."""
        response: dict[str, Any] = {
            "success": False,
            "error": self.user_message,
            "error_code": self.category.value,
        }
        if include_details and self.details:
            response["details"] = self.details
        return response


def classify_error(error: Exception, context: str = "") -> ClassifiedError:
    """
    Classify an exception into a category and exit code.

    Analysis errors keep their own message as details (they describe the
    user's ontology, not internals). Anything unexpected is logged and
    reported as an internal failure with exit code 2.

    Args:
        error: The exception to classify
        context: Optional context about where the error occurred

    Returns:
        ClassifiedError with user message and exit code
    """
    from pydantic import ValidationError as PydanticValidationError

    logger = get_logger()

    if isinstance(error, UpoError):
        return ClassifiedError(
            category=error.category,
            user_message=SAFE_ERROR_MESSAGES[error.category],
            details=str(error),
            internal_message=str(error),
            exit_code=error.exit_code,
        )

    if isinstance(error, PydanticValidationError):
        fields = [str(err["loc"][-1]) for err in error.errors() if err.get("loc")]
        logger.validation_failure(
            field=", ".join(fields) if fields else "unknown",
            reason=str(error),
        )
        return ClassifiedError(
            category=ErrorCategory.VALIDATION,
            user_message=SAFE_ERROR_MESSAGES[ErrorCategory.VALIDATION],
            details=f"Invalid fields: {', '.join(fields)}" if fields else None,
            internal_message=str(error),
        )

    if isinstance(error, OSError):
        return ClassifiedError(
            category=ErrorCategory.IO,
            user_message=SAFE_ERROR_MESSAGES[ErrorCategory.IO],
            details=f"{error.strerror or type(error).__name__}: {error.filename or ''}".strip(),
            internal_message=str(error),
        )

    if isinstance(error, UnicodeDecodeError):
        return ClassifiedError(
            category=ErrorCategory.IO,
            user_message=SAFE_ERROR_MESSAGES[ErrorCategory.IO],
            details="the document is not valid UTF-8",
            internal_message=str(error),
        )

    if isinstance(error, (RuntimeError, AssertionError)):
        logger.system_error(error, context)
        return ClassifiedError(
            category=ErrorCategory.INTERNAL,
            user_message=SAFE_ERROR_MESSAGES[ErrorCategory.INTERNAL],
            internal_message=str(error),
        )

    logger.system_error(error, context)
    return ClassifiedError(
        category=ErrorCategory.UNKNOWN,
        user_message=SAFE_ERROR_MESSAGES[ErrorCategory.UNKNOWN],
        internal_message=f"{type(error).__name__}: {error}",
    )


def safe_error_response(
    error: Exception,
    context: str = "",
    include_details: bool = True,
) -> dict[str, Any]:
    """
    Create an error payload from an exception.

    Args:
        error: The exception that occurred
        context: Optional context about where the error occurred
        include_details: Whether to include details

    Returns:
        Dict suitable for a tool response
    """
    return classify_error(error, context).to_response(include_details)
