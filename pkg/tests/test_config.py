"""
Tests for settings loaded from the environment.
"""

import pytest

from graphmanifold_mcp import config
from graphmanifold_mcp.config import ConfigError, Settings

VARIABLES = (
    "GRAPHMANIFOLD_EXHAUSTIVE_LIMIT",
    "GRAPHMANIFOLD_SEARCH_BUDGET",
    "GRAPHMANIFOLD_GRID_DENOMINATOR",
    "GRAPHMANIFOLD_CENSUS_SEARCH_BUDGET",
    "GRAPHMANIFOLD_CENSUS_GRID_DENOMINATOR",
    "GRAPHMANIFOLD_CACHE_TTL",
    "GRAPHMANIFOLD_MCP_MASK_ERRORS",
    "GRAPHMANIFOLD_LOG_LEVEL",
)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """No GRAPHMANIFOLD_* variables and no .env file on the lookup path."""
    for name in VARIABLES:
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)
    monkeypatch.setattr(config, "_env_paths", [tmp_path / ".env"])
    monkeypatch.chdir(tmp_path)
    return monkeypatch


class TestSettingsFromEnv:
    """Tests for Settings.from_env."""

    def test_defaults(self, clean_env):
        assert Settings.from_env() == Settings()

    def test_overrides(self, clean_env):
        clean_env.setenv("GRAPHMANIFOLD_EXHAUSTIVE_LIMIT", "64")
        clean_env.setenv("GRAPHMANIFOLD_GRID_DENOMINATOR", "3")
        clean_env.setenv("GRAPHMANIFOLD_MCP_MASK_ERRORS", "yes")
        clean_env.setenv("GRAPHMANIFOLD_LOG_LEVEL", "debug")

        settings = Settings.from_env()

        assert settings.exhaustive_limit == 64
        assert settings.grid_denominator == 3
        assert settings.mask_errors is True
        assert settings.log_level == "DEBUG"
        assert settings.search_budget == 2000

    def test_census_search_overrides(self, clean_env):
        clean_env.setenv("GRAPHMANIFOLD_CENSUS_SEARCH_BUDGET", "16")
        clean_env.setenv("GRAPHMANIFOLD_CENSUS_GRID_DENOMINATOR", "3")

        settings = Settings.from_env()

        assert settings.census_search_budget == 16
        assert settings.census_grid_denominator == 3
        assert settings.search_budget == 2000
        assert settings.grid_denominator == 6

    def test_empty_value_keeps_default(self, clean_env):
        clean_env.setenv("GRAPHMANIFOLD_SEARCH_BUDGET", "")

        assert Settings.from_env().search_budget == 2000

    @pytest.mark.parametrize("value", ["0", "-5", "many"])
    def test_rejects_nonpositive_or_malformed(self, clean_env, value):
        clean_env.setenv("GRAPHMANIFOLD_CACHE_TTL", value)

        with pytest.raises(ConfigError, match="GRAPHMANIFOLD_CACHE_TTL"):
            Settings.from_env()

    def test_rejects_unknown_log_level(self, clean_env):
        clean_env.setenv("GRAPHMANIFOLD_LOG_LEVEL", "LOUD")

        with pytest.raises(ConfigError):
            Settings.from_env()

    def test_reads_env_file(self, clean_env, tmp_path):
        (tmp_path / ".env").write_text("GRAPHMANIFOLD_SEARCH_BUDGET=77\n", encoding="utf-8")

        assert config.load_environment() == tmp_path / ".env"
        assert Settings.from_env().search_budget == 77
