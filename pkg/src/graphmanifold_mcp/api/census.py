"""
Census API module.

Provides MCP tools for the census cross-validation:
- run_census - classify every graph within bounds, paginate the rows
- get_cache_info - inspect a cached census report
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from graphmanifold_mcp.cache import CacheInfo, apply_query, cache
from graphmanifold_mcp.config import Settings
from graphmanifold_mcp.core import census as engine
from graphmanifold_mcp.core.decider import SearchSettings
from graphmanifold_mcp.core.graph import graph_document, parse_rational
from graphmanifold_mcp.types import CensusRowRecord, CensusSummary, DiscrepancyRecord


# =============================================================================
# Response Types
# =============================================================================


@dataclass
class PaginatedCensusResponse:
    """Response for a paginated census report."""

    success: bool
    cache_key: str
    total: int
    offset: int
    limit: int
    has_more: bool
    data: list[Any]
    summary: CensusSummary | None = None
    error: str | None = None
    error_kind: str | None = None
    query_applied: str | None = None


def _failure(error: str, error_kind: str, limit: int, cache_key: str = "", query: str | None = None) -> PaginatedCensusResponse:
    return PaginatedCensusResponse(
        success=False,
        error=error,
        error_kind=error_kind,
        cache_key=cache_key,
        total=0,
        offset=0,
        limit=limit,
        has_more=False,
        data=[],
        query_applied=query,
    )


# =============================================================================
# Renderers
# =============================================================================


def render_discrepancy(d: engine.Discrepancy) -> DiscrepancyRecord:
    return {"kind": d.kind, "property": d.property, "detail": d.detail, "flagged": d.flagged}


def render_row(row: engine.CensusRow) -> CensusRowRecord:
    return {
        "index": row.index,
        "graph": graph_document(row.graph),
        "profile": {str(p): holds for p, holds in row.profile.items()},
        "profile_key": row.profile_key(),
        "violations": list(row.violations),
        "discrepancies": [render_discrepancy(d) for d in row.discrepancies],
        "flagged": row.flagged,
        "certificates_checked": row.certificates_checked,
    }


def census_summary(report: engine.CensusReport) -> CensusSummary:
    discrepancies = report.discrepancies
    return {
        "graphs": len(report.rows),
        "profiles": dict(report.profiles),
        "implication_violations": report.implication_violations,
        "discrepancies": len(discrepancies),
        "flagged_discrepancies": sum(1 for _, d in discrepancies if d.flagged),
        "ok": report.ok,
    }


def census_document(report: engine.CensusReport) -> dict[str, Any]:
    """Full report: summary plus the discrepancy list with graph indices."""
    return {
        "summary": census_summary(report),
        "discrepancies": [
            {"graph": index, **render_discrepancy(d)} for index, d in report.discrepancies
        ],
    }


def parse_bounds(
    max_vertices: int,
    charges: list[str] | None,
    indices: list[int] | None,
    max_edges: int,
    loops: bool,
    include_disconnected: bool,
) -> engine.CensusBounds:
    """
    Raises:
        ValueError: on a malformed charge, a zero index or a negative bound
    """
    if max_vertices < 0 or max_edges < 0:
        raise ValueError("max_vertices and max_edges must be non-negative")
    charge_set: tuple[Fraction, ...] = engine.DEFAULT_CHARGES
    if charges is not None:
        charge_set = tuple(sorted({parse_rational(c) for c in charges}))
    index_set = engine.CensusBounds.indices
    if indices is not None:
        if any(isinstance(b, bool) or not isinstance(b, int) or b == 0 for b in indices):
            raise ValueError("indices must be nonzero integers")
        index_set = tuple(sorted(set(indices)))
    return engine.CensusBounds(
        max_vertices=max_vertices,
        charges=charge_set,
        indices=index_set,
        max_edges=max_edges,
        loops=loops,
        connected_only=not include_disconnected,
    )


# =============================================================================
# Tool Functions
# =============================================================================


def run_census(
    max_vertices: int = 3,
    charges: list[str] | None = None,
    indices: list[int] | None = None,
    max_edges: int = 4,
    loops: bool = False,
    include_disconnected: bool = False,
    workers: int = 1,
    budget: int | None = None,
    grid: int | None = None,
    limit: int = 50,
    offset: int = 0,
    cache_key: str | None = None,
    query: str | None = None,
    settings: Settings | None = None,
) -> PaginatedCensusResponse:
    """
    Run the census within bounds, or page through a cached one.

    Args:
        max_vertices: Largest vertex count enumerated
        charges: Charge set as "p/q" strings (default -1, -1/2, 0, 1/2, 1)
        indices: Intersection index set (default 1, 2)
        max_edges: Largest number of geometric edges
        loops: Include loops
        include_disconnected: Enumerate disconnected graphs too
        workers: Worker processes
        budget: Enumeration limit and LP-solve budget
        grid: Denominator bound of the numeric search grid
        limit: Maximum rows to return (1-1000)
        offset: Starting index in query results
        cache_key: Reuse rows of a previous call; bounds are ignored then
        query: JMESPath expression over the rows, with nvl() and frac()

    Returns:
        PaginatedCensusResponse with rows, summary and pagination info.

        Data items schema:
        {
            "type": "object",
            "properties": {
                "index": {"type": "integer", "description": "Position in enumeration order"},
                "graph": {"type": "object", "description": "Graph document: vertices [{id, charge}], edges [{id, ends, b}]"},
                "profile": {"type": "object", "description": "Property id (Im, HI, F, E, VF, VE, NPC) to true/false/null"},
                "profile_key": {"type": "string", "description": "e.g. 'Im HI ¬F ¬E VF VE ¬NPC'"},
                "violations": {"type": "array", "description": "Violated implications such as 'F⇒E'"},
                "discrepancies": {"type": "array", "description": "Objects {kind, property, detail, flagged}"},
                "flagged": {"type": "boolean", "description": "Graph has a loop at a charged vertex"},
                "certificates_checked": {"type": "integer"}
            }
        }
    """
    settings = settings or Settings()
    if limit < 1 or limit > 1000:
        return _failure("limit must be between 1 and 1000", "contract", limit)
    if offset < 0:
        return _failure("offset must be non-negative", "contract", limit)
    if workers < 1 or (budget is not None and budget <= 0) or (grid is not None and grid <= 0):
        return _failure("workers, budget and grid must be positive", "contract", limit)

    entry = cache.get(cache_key) if cache_key else None
    if entry:
        data, summary, key = entry.data, entry.summary, cache_key
    else:
        try:
            bounds = parse_bounds(max_vertices, charges, indices, max_edges, loops, include_disconnected)
        except ValueError as e:
            return _failure(str(e), "parse", limit)
        report = engine.run_census(
            bounds,
            exhaustive_limit=budget or settings.exhaustive_limit,
            search=SearchSettings(
                budget=budget or settings.census_search_budget,
                denominator=grid or settings.census_grid_denominator,
            ),
            workers=workers,
        )
        data = [render_row(row) for row in report.rows]
        summary = census_summary(report)
        key = cache.create(data, summary)

    if query:
        result, error = apply_query(data, query)
        if error:
            return _failure(error, "contract", limit, key, query)
    else:
        result = data

    if not isinstance(result, list):
        result = [result]

    total = len(result)
    return PaginatedCensusResponse(
        success=True,
        cache_key=key,
        total=total,
        offset=offset,
        limit=limit,
        has_more=offset + limit < total,
        data=result[offset : offset + limit],
        summary=summary,
        query_applied=query,
    )


def get_cache_info(cache_key: str) -> CacheInfo:
    return cache.get_info(cache_key)
