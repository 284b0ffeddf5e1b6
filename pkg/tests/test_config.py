import pytest
from pydantic import ValidationError as PydanticValidationError

from upo_lint.config import UpoSettings, configure_settings, env_flag, get_settings
from upo_lint.logging import LogLevel


class TestEnvFlag:
    @pytest.mark.parametrize("value", ["1", "true", "yes", "anything"])
    def test_truthy(self, monkeypatch, value):
        monkeypatch.setenv("UPO_NO_COLOR", value)
        assert env_flag("UPO_NO_COLOR") is True

    @pytest.mark.parametrize("value", ["", "0", "false", "No", " FALSE "])
    def test_falsy(self, monkeypatch, value):
        monkeypatch.setenv("UPO_NO_COLOR", value)
        assert env_flag("UPO_NO_COLOR") is False

    def test_unset(self, clean_env):
        assert env_flag("UPO_NO_COLOR") is False


class TestUpoSettings:
    def test_defaults(self, clean_env):
        settings = UpoSettings.from_env()
        assert settings.no_color is False
        assert settings.log_level == "WARNING"
        assert settings.log_format == "json"
        assert settings.prelude is True

    def test_from_env(self, clean_env, monkeypatch):
        monkeypatch.setenv("UPO_NO_COLOR", "1")
        monkeypatch.setenv("UPO_LOG_LEVEL", "debug")
        monkeypatch.setenv("UPO_LOG_FORMAT", "TEXT")
        monkeypatch.setenv("UPO_NO_PRELUDE", "yes")
        settings = UpoSettings.from_env()
        assert settings.no_color is True
        assert settings.log_level == "DEBUG"
        assert settings.log_level is LogLevel.DEBUG
        assert settings.log_format == "text"
        assert settings.prelude is False

    def test_invalid_level(self):
        with pytest.raises(PydanticValidationError):
            UpoSettings(log_level="LOUD")

    def test_invalid_format(self):
        with pytest.raises(PydanticValidationError):
            UpoSettings(log_format="xml")  # type: ignore[arg-type]

    def test_extra_fields_forbidden(self):
        with pytest.raises(PydanticValidationError):
            UpoSettings(colour=True)  # type: ignore[call-arg]


class TestGlobalSettings:
    def test_cached(self, clean_env):
        assert get_settings() is get_settings()

    def test_configure_replaces(self, clean_env):
        custom = UpoSettings(no_color=True)
        assert configure_settings(custom) is custom
        assert get_settings() is custom

    def test_configure_rereads_env(self, clean_env, monkeypatch):
        get_settings()
        monkeypatch.setenv("UPO_NO_PRELUDE", "1")
        assert configure_settings().prelude is False
