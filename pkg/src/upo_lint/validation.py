"""
Input validation utilities.

This module provides validation for the values that reach the analyses
from outside a parsed document: entity names, timestamps and file paths.
"""

import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from .errors import ErrorCategory, InvalidTimestamp, UpoError


# =============================================================================
# Validation Configuration
# =============================================================================

# Names in the .upo format
NAME_PATTERN = re.compile(r'^[A-Za-z_][A-Za-z0-9_-]*$')

# Expression keywords cannot be used as names
RESERVED_WORDS = frozenset({"and", "or", "not", "some", "only", "value", "via"})

# ISO-8601 instant, second precision, UTC implied (a trailing Z is tolerated)
TIMESTAMP_PATTERN = re.compile(r'^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z?$')
TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%S"

# "next <day>" reaches up to 14 days past the utterance; it must stay representable
MAX_TIMESTAMP_YEAR = 9998

MAX_NAME_LENGTH = 256


# =============================================================================
# Validation Errors
# =============================================================================

class ValidationError(UpoError):
    """Raised when input validation fails."""

    category = ErrorCategory.VALIDATION

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        self.message = message
        super().__init__(f"Validation error on '{field}': {message}")


@dataclass
class ValidationResult:
    """Result of a validation operation."""
    is_valid: bool
    error: Optional[str] = None
    sanitized_value: Any = None


# =============================================================================
# Names
# =============================================================================

def validate_name(value: Optional[str], field_name: str = "name") -> ValidationResult:
    """
    Validate an entity name against the .upo name grammar.

    Args:
        value: The name to validate
        field_name: Name of the field for error messages

    Returns:
        ValidationResult with the stripped name or an error
    """
    if value is None:
        return ValidationResult(is_valid=False, error=f"{field_name} is required")
    if not isinstance(value, str):
        return ValidationResult(is_valid=False, error=f"{field_name} must be a string")

    value = value.strip()
    if not value:
        return ValidationResult(is_valid=False, error=f"{field_name} cannot be empty")
    if len(value) > MAX_NAME_LENGTH:
        return ValidationResult(
            is_valid=False,
            error=f"{field_name} cannot exceed {MAX_NAME_LENGTH} characters",
        )
    if not NAME_PATTERN.match(value):
        return ValidationResult(
            is_valid=False,
            error=f"{field_name} must match [A-Za-z_][A-Za-z0-9_-]*",
        )
    if value in RESERVED_WORDS:
        return ValidationResult(is_valid=False, error=f"{field_name} cannot be a keyword")
    return ValidationResult(is_valid=True, sanitized_value=value)


def require_valid_name(value: Optional[str], field_name: str = "name") -> str:
    """Validate a name and return it or raise ValidationError."""
    result = validate_name(value, field_name)
    if not result.is_valid:
        raise ValidationError(field_name, result.error or "invalid name")
    return result.sanitized_value


# =============================================================================
# Timestamps
# =============================================================================

def validate_timestamp(value: Optional[str]) -> ValidationResult:
    """
    Validate an ISO-8601 `YYYY-MM-DDThh:mm:ss` instant.

    Returns:
        ValidationResult whose sanitized value is a UTC-aware datetime
    """
    if value is None:
        return ValidationResult(is_valid=False, error="timestamp is required")
    if not isinstance(value, str):
        return ValidationResult(is_valid=False, error="timestamp must be a string")

    value = value.strip()
    if not TIMESTAMP_PATTERN.match(value):
        return ValidationResult(is_valid=False, error="expected YYYY-MM-DDThh:mm:ss")
    try:
        parsed = datetime.strptime(value.rstrip("Z"), TIMESTAMP_FORMAT)
    except ValueError as e:
        return ValidationResult(is_valid=False, error=str(e))
    if parsed.year > MAX_TIMESTAMP_YEAR:
        return ValidationResult(is_valid=False,
                                error=f"year must be {MAX_TIMESTAMP_YEAR} or earlier")
    return ValidationResult(is_valid=True, sanitized_value=parsed.replace(tzinfo=timezone.utc))


def require_valid_timestamp(value: Optional[str]) -> datetime:
    """
    Validate a timestamp and return it or raise InvalidTimestamp.

    Raises:
        InvalidTimestamp: If validation fails
    """
    result = validate_timestamp(value)
    if not result.is_valid:
        raise InvalidTimestamp(str(value), result.error or "invalid timestamp")
    return result.sanitized_value


def format_timestamp(instant: datetime) -> str:
    """Render an instant in the canonical `YYYY-MM-DDThh:mm:ss` form."""
    return instant.astimezone(timezone.utc).strftime(TIMESTAMP_FORMAT)


# =============================================================================
# Paths
# =============================================================================

def validate_source_path(value: Optional[str]) -> ValidationResult:
    """Validate that a path names a readable regular file."""
    if not value:
        return ValidationResult(is_valid=False, error="path is required")
    path = Path(value)
    if not path.exists():
        return ValidationResult(is_valid=False, error=f"{value} does not exist")
    if not path.is_file():
        return ValidationResult(is_valid=False, error=f"{value} is not a file")
    return ValidationResult(is_valid=True, sanitized_value=path)
