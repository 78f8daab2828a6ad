"""
Settings for the MCP server.

Environment variables are read from the process environment after loading a
.env file from the first of these locations that exists:

1. the current working directory
2. the workspace root (for when running as MCP server)
3. ~/.graphmanifold/.env
"""

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

_env_paths = [
    Path.cwd() / ".env",
    Path(__file__).parent.parent.parent / ".env",  # workspace/.env
    Path.home() / ".graphmanifold" / ".env",
]

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigError(ValueError):
    """An environment variable holds a value the server cannot use."""


def load_environment() -> Path | None:
    """Load the first .env file found; return its path, or None for the default lookup."""
    for env_path in _env_paths:
        if env_path.exists():
            load_dotenv(env_path)
            return env_path
    load_dotenv()
    return None


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be a positive integer, got {raw!r}") from e
    if value <= 0:
        raise ConfigError(f"{name} must be a positive integer, got {raw!r}")
    return value


def _flag(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.lower() in ("true", "1", "yes")


@dataclass(frozen=True)
class Settings:
    exhaustive_limit: int = 4096
    search_budget: int = 2000
    grid_denominator: int = 6
    census_search_budget: int = 8
    census_grid_denominator: int = 2
    cache_ttl: int = 300
    mask_errors: bool = False
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from GRAPHMANIFOLD_* environment variables.

        Raises:
            ConfigError: if a numeric variable is not a positive integer or
                the log level is unknown
        """
        load_environment()
        log_level = os.getenv("GRAPHMANIFOLD_LOG_LEVEL", cls.log_level).upper()
        if log_level not in _LOG_LEVELS:
            raise ConfigError(f"GRAPHMANIFOLD_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")
        return cls(
            exhaustive_limit=_positive_int("GRAPHMANIFOLD_EXHAUSTIVE_LIMIT", cls.exhaustive_limit),
            search_budget=_positive_int("GRAPHMANIFOLD_SEARCH_BUDGET", cls.search_budget),
            grid_denominator=_positive_int("GRAPHMANIFOLD_GRID_DENOMINATOR", cls.grid_denominator),
            census_search_budget=_positive_int(
                "GRAPHMANIFOLD_CENSUS_SEARCH_BUDGET", cls.census_search_budget
            ),
            census_grid_denominator=_positive_int(
                "GRAPHMANIFOLD_CENSUS_GRID_DENOMINATOR", cls.census_grid_denominator
            ),
            cache_ttl=_positive_int("GRAPHMANIFOLD_CACHE_TTL", cls.cache_ttl),
            mask_errors=_flag("GRAPHMANIFOLD_MCP_MASK_ERRORS", cls.mask_errors),
            log_level=log_level,
        )
