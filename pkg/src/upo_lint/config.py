"""
Environment-driven settings.

Entry points call load_dotenv() first, so a `.env` file in the working
directory can set any of these:

    UPO_NO_COLOR    any value but 0/false/no disables ANSI colour
    UPO_LOG_LEVEL   DEBUG, INFO, WARNING (default), ERROR or CRITICAL
    UPO_LOG_FORMAT  json (default) or text
    UPO_NO_PRELUDE  same truthiness as UPO_NO_COLOR; skips the builtin prelude
"""

import os
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from .logging import LogLevel

FALSE_VALUES = frozenset({"", "0", "false", "no"})


def env_flag(name: str) -> bool:
    """True when the variable is set to anything but an explicit false value."""
    return os.getenv(name, "").strip().lower() not in FALSE_VALUES


class UpoSettings(BaseModel):
    """Process-wide settings."""

    model_config = ConfigDict(extra='forbid', frozen=True)

    no_color: bool = False
    log_level: LogLevel = LogLevel.WARNING
    log_format: Literal["json", "text"] = "json"
    prelude: bool = True

    @field_validator('log_level', mode='before')
    @classmethod
    def normalize_log_level(cls, v: Any) -> Any:
        return v.strip().upper() if isinstance(v, str) else v

    @classmethod
    def from_env(cls) -> "UpoSettings":
        return cls(
            no_color=env_flag("UPO_NO_COLOR"),
            log_level=os.getenv("UPO_LOG_LEVEL", "WARNING"),  # type: ignore[arg-type]
            log_format=os.getenv("UPO_LOG_FORMAT", "json").strip().lower(),  # type: ignore[arg-type]
            prelude=not env_flag("UPO_NO_PRELUDE"),
        )


_settings: Optional[UpoSettings] = None


def get_settings() -> UpoSettings:
    """Get or create the process-wide settings."""
    global _settings
    if _settings is None:
        _settings = UpoSettings.from_env()
    return _settings


def configure_settings(settings: Optional[UpoSettings] = None) -> UpoSettings:
    """Replace the process-wide settings; re-reads the environment when None."""
    global _settings
    _settings = settings or UpoSettings.from_env()
    return _settings
