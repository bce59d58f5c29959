"""Unit tests for settings loaded from the environment."""

import logging

import pytest
from jet_poisson.config import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_SPAIRS,
    DEFAULT_SEED,
    Settings,
    load_settings,
)
from jet_poisson.exceptions import ConfigurationError
from jet_poisson.utils.budget import Budget

ENV_NAMES = (
    "JET_POISSON_MAX_SPAIRS",
    "JET_POISSON_MAX_DEGREE",
    "JET_POISSON_SEED",
    "JET_POISSON_LOG_LEVEL",
)


@pytest.fixture
def clean_env(mocker, monkeypatch):
    """No .env file and no JET_POISSON_* variables."""
    mocker.patch("jet_poisson.config.load_dotenv")
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


class TestLoadSettings:
    """Tests for load_settings."""

    def test_defaults(self, clean_env):
        """Unset variables should fall back to the defaults."""
        settings = load_settings()
        assert settings == Settings()
        assert settings.max_spairs == DEFAULT_MAX_SPAIRS
        assert settings.max_degree == DEFAULT_MAX_DEGREE
        assert settings.seed == DEFAULT_SEED
        assert settings.log_level == logging.INFO

    def test_reads_environment(self, clean_env):
        """Variables should override the defaults."""
        clean_env.setenv("JET_POISSON_MAX_SPAIRS", "100")
        clean_env.setenv("JET_POISSON_MAX_DEGREE", "8")
        clean_env.setenv("JET_POISSON_SEED", "7")
        clean_env.setenv("JET_POISSON_LOG_LEVEL", "debug")

        settings = load_settings()

        assert settings.max_spairs == 100
        assert settings.max_degree == 8
        assert settings.seed == 7
        assert settings.log_level == logging.DEBUG

    def test_blank_value_uses_default(self, clean_env):
        """An empty variable should count as unset."""
        clean_env.setenv("JET_POISSON_SEED", "  ")
        assert load_settings().seed == DEFAULT_SEED

    def test_non_integer_raises(self, clean_env):
        """A non-integer budget should raise ConfigurationError."""
        clean_env.setenv("JET_POISSON_MAX_SPAIRS", "many")
        with pytest.raises(ConfigurationError) as exc_info:
            load_settings()
        assert "JET_POISSON_MAX_SPAIRS" in str(exc_info.value)

    def test_budget_below_minimum_raises(self, clean_env):
        """Budgets must be at least 1."""
        clean_env.setenv("JET_POISSON_MAX_DEGREE", "0")
        with pytest.raises(ConfigurationError):
            load_settings()

    def test_unknown_log_level_raises(self, clean_env):
        """An unknown log level should raise ConfigurationError."""
        clean_env.setenv("JET_POISSON_LOG_LEVEL", "LOUD")
        with pytest.raises(ConfigurationError) as exc_info:
            load_settings()
        assert "LOUD" in str(exc_info.value)

    def test_loads_dotenv(self, mocker):
        """load_settings should read the .env file first."""
        mock_load = mocker.patch("jet_poisson.config.load_dotenv")
        load_settings()
        mock_load.assert_called_once()


class TestBudgetFromSettings:
    """Tests for Budget.from_settings."""

    def test_copies_limits(self):
        """The budget should take both limits from the settings."""
        budget = Budget.from_settings(Settings(max_spairs=5, max_degree=3))
        assert budget == Budget(max_spairs=5, max_degree=3)

    def test_none_gives_defaults(self):
        """Without settings the default budget applies."""
        assert Budget.from_settings(None) == Budget()
