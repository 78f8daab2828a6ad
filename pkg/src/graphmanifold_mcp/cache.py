"""
Caching infrastructure for census reports.

This module provides:
- ReportCache: client-controlled caching of census rows for pagination
- JMESPath query support with custom functions (nvl, frac)
"""

import uuid
from dataclasses import dataclass, field
from time import time
from typing import Any

import jmespath

from graphmanifold_mcp.utils.jmespath_extensions import search_with_custom_functions


# =============================================================================
# Response Types
# =============================================================================


@dataclass
class CacheInfo:
    """Information about a cache entry."""

    valid: bool
    total_items: int | None = None
    age_seconds: int | None = None
    expires_in_seconds: int | None = None


@dataclass
class CacheEntry:
    """A cached census report with TTL management."""

    data: list[dict[str, Any]]
    summary: dict[str, Any] = field(default_factory=dict)
    created_at: float = field(default_factory=time)
    last_accessed: float = field(default_factory=time)
    ttl: int = 300

    def touch(self) -> None:
        self.last_accessed = time()

    @property
    def is_expired(self) -> bool:
        """Check if entry has exceeded TTL since last access."""
        return time() - self.last_accessed > self.ttl

    @property
    def age_seconds(self) -> int:
        return int(time() - self.created_at)

    @property
    def expires_in_seconds(self) -> int:
        """Seconds until the entry expires (from last access)."""
        return max(0, int(self.ttl - (time() - self.last_accessed)))


# =============================================================================
# Cache Manager
# =============================================================================


class ReportCache:
    """Census rows keyed by client-visible cache keys."""

    def __init__(self, default_ttl: int = 300):
        self._cache: dict[str, CacheEntry] = {}
        self._default_ttl = default_ttl

    @property
    def default_ttl(self) -> int:
        return self._default_ttl

    def configure(self, default_ttl: int) -> None:
        """Set the TTL used for entries created from now on."""
        self._default_ttl = default_ttl

    def create(self, data: list[dict[str, Any]], summary: dict[str, Any] | None = None) -> str:
        """Store rows and return a new cache key."""
        self._lazy_cleanup()
        key = f"cs_{uuid.uuid4().hex[:8]}"
        self._cache[key] = CacheEntry(data=data, summary=summary or {}, ttl=self._default_ttl)
        return key

    def get(self, key: str) -> CacheEntry | None:
        """Retrieve a cache entry, None if missing or expired."""
        self._lazy_cleanup()
        entry = self._cache.get(key)
        if entry and not entry.is_expired:
            entry.touch()
            return entry
        self._cache.pop(key, None)
        return None

    def get_info(self, key: str) -> CacheInfo:
        entry = self._cache.get(key)
        if not entry or entry.is_expired:
            return CacheInfo(valid=False)
        return CacheInfo(
            valid=True,
            total_items=len(entry.data),
            age_seconds=entry.age_seconds,
            expires_in_seconds=entry.expires_in_seconds,
        )

    def invalidate(self, key: str) -> bool:
        """Explicitly invalidate a cache entry."""
        return self._cache.pop(key, None) is not None

    def _lazy_cleanup(self) -> None:
        """Remove expired entries (called on each access)."""
        expired = [k for k, v in self._cache.items() if v.is_expired]
        for k in expired:
            del self._cache[k]


# =============================================================================
# JMESPath Query Support
# =============================================================================


def apply_query(data: list[dict[str, Any]], expression: str) -> tuple[Any, str | None]:
    """
    Apply a JMESPath expression to census rows with custom function support.

    Custom functions:
    - nvl(value, default): Return default if value is null
    - frac(value): Convert a "p/q" string or a number to a float (null on failure)

    Returns:
        Tuple of (result, error_message); error_message is None on success

    Example:
        apply_query(rows, "[?profile.NPC && !profile.F]")
    """
    try:
        result = search_with_custom_functions(expression, data)
        return (result if result is not None else [], None)
    except jmespath.exceptions.JMESPathError as e:
        return ([], f"Invalid query expression: {e}")


# Shared cache instance
cache = ReportCache()
