"""
Pytest configuration and fixtures for Graph Manifold MCP Server tests.
"""

from pathlib import Path

import pytest

from graphmanifold_mcp.cache import cache
from tests.sample_graphs import (
    CHARGED_LOOP_DOC,
    HALF_HALF_DOC,
    MALFORMED_DOC,
    ONE_ONE_DOC,
    loop_graph,
    two_vertex,
)


@pytest.fixture
def fibered_pair():
    """k=(1,1), b=1: fibered, hence every weaker property."""
    return two_vertex(1, 1, 1)


@pytest.fixture
def half_pair():
    """k=(1/2,1/2), b=1: nonpositively curved, not fibered."""
    return two_vertex("1/2", "1/2", 1)


@pytest.fixture
def charged_loop():
    """k=2 with one loop of index 1, the documented flagged case."""
    return loop_graph(2, 1)


@pytest.fixture
def graph_files(tmp_path: Path) -> dict[str, Path]:
    """Write the sample documents to disk for CLI tests."""
    files = {
        "half": HALF_HALF_DOC,
        "one": ONE_ONE_DOC,
        "loop": CHARGED_LOOP_DOC,
        "malformed": MALFORMED_DOC,
    }
    paths = {}
    for name, text in files.items():
        path = tmp_path / f"{name}.json"
        path.write_text(text, encoding="utf-8")
        paths[name] = path
    return paths


@pytest.fixture
def clean_cache():
    """Start and end a test with an empty report cache."""
    cache._cache.clear()
    yield cache
    cache._cache.clear()
