"""
Graph Manifold MCP Server - Main Entry Point

This module sets up the FastMCP server and registers all tools from the API modules.

IMPORTANT DOCUMENTATION RULE:
================================================================================
ONLY tool methods that accept a 'query' parameter (JMESPath filtering) need to
document their output JSON schema in the docstring Returns section. The LLM
needs the structure of data it can filter or project; fixed responses are
described by their response type.
================================================================================
"""

import logging
from typing import Annotated

from fastmcp import FastMCP
from fastmcp.exceptions import ToolError

from graphmanifold_mcp.api import census, certificates, classify
from graphmanifold_mcp.cache import CacheInfo, cache
from graphmanifold_mcp.config import Settings

# =============================================================================
# Server Setup
# =============================================================================

settings = Settings.from_env()
logging.basicConfig(level=settings.log_level)
cache.configure(settings.cache_ttl)

mcp = FastMCP(
    name="Graph Manifold MCP Server",
    instructions="""
    Graph Manifold MCP Server decides topological properties of closed graph
    manifolds from their labelled JSJ graph, using exact rational arithmetic.

    ## Graph documents

    {"vertices": [{"id": "v1", "charge": "1/2"}, ...],
     "edges": [{"id": "e1", "ends": ["v1", "v2"], "b": 1}, ...]}

    Charges are rationals written "p/q" (or integers); b is a nonzero integer.
    Dart ids are "<edge id>+" (first end to second) and "<edge id>-".

    ## Properties

    Im (immersed surface), HI (horizontal immersed), F (fibered), E (embedded),
    VF (virtually fibered), VE (virtually embedded), NPC (nonpositively curved).

    ## Tools

    - classify_graph: verdicts with witnesses, certificates, matrices
    - check_certificate: validate an explicit BKN solution
    - run_census: cross-validate every small graph; paginated with JMESPath
    - get_cache_info: inspect a cached census report

    ## JMESPath Queries

    Census rows store rationals as strings. Custom functions: nvl(), frac()
    """,
    mask_error_details=settings.mask_errors,
    on_duplicate="error",
)


# =============================================================================
# Classification Tools
# =============================================================================


@mcp.tool()
def classify_graph(
    graph_json: Annotated[str, "Graph document as JSON text"],
    property: Annotated[str | None, "Emit only this property: Im, HI, F, E, VF, VE or NPC"] = None,
    budget: Annotated[int | None, "Enumeration limit for E/VE and LP-solve budget for certificate search"] = None,
    grid: Annotated[int | None, "Denominator bound of the certificate search grid"] = None,
    search: Annotated[bool, "Attach certificates to holding verdicts"] = True,
) -> classify.ClassifyResponse:
    """
    Decide which of the seven properties a graph manifold has.

    Every verdict comes with the criterion clause that decided it (inertia,
    kernel vector, principal subset, sign assignment) and, where one was
    found, an explicit certificate that check_certificate accepts. Verdicts
    of VF, VE and NPC on graphs with a loop at a charged vertex carry a caveat.

    Args:
        graph_json: Graph document
        property: Restrict the output to one property
        budget: Upper bound on exhaustive cases; larger graphs report "undecided: budget"
        grid: Certificate search grid denominator (default 6)
        search: Set False to skip certificate search

    Returns:
        ClassifyResponse with verdicts, matrices A, A+, H, signed components
        and the implication report. undecided lists budget-limited properties.
    """
    response = classify.classify_graph(graph_json, property, budget, grid, search, settings=settings)
    if not response.success:
        raise ToolError(response.error)
    return response


# =============================================================================
# Certificate Tools
# =============================================================================


@mcp.tool()
def check_certificate(
    graph_json: Annotated[str, "Graph document as JSON text"],
    certificate_json: Annotated[str, "Certificate document: {a, gamma, variant}"],
) -> certificates.CheckResponse:
    """
    Check an explicit BKN solution against the constraints of its variant.

    Args:
        graph_json: Graph document
        certificate_json: {"a": {vertex: "p/q"}, "gamma": {dart: "p/q"}, "variant": "VF"}

    Returns:
        CheckResponse with valid, exact residuals per vertex and violated constraints
    """
    response = certificates.check_certificate(graph_json, certificate_json)
    if not response.success:
        raise ToolError(response.error)
    return response


# =============================================================================
# Census Tools
# =============================================================================


@mcp.tool()
def run_census(
    max_vertices: Annotated[int, "Largest vertex count (keep at 3 or below for interactive use)"] = 3,
    charges: Annotated[list[str] | None, "Charge set as 'p/q' strings"] = None,
    indices: Annotated[list[int] | None, "Intersection index set"] = None,
    max_edges: Annotated[int, "Largest number of geometric edges"] = 4,
    loops: Annotated[bool, "Include loops"] = False,
    include_disconnected: Annotated[bool, "Enumerate disconnected graphs too"] = False,
    limit: Annotated[int, "Maximum rows to return (1-1000)"] = 50,
    offset: Annotated[int, "Starting index in query results"] = 0,
    cache_key: Annotated[str | None, "Reuse cached rows from previous call"] = None,
    query: Annotated[str | None, "JMESPath expression for filtering/projection"] = None,
) -> census.PaginatedCensusResponse:
    """
    Classify every labelled graph within bounds and cross-check the deciders.

    Each graph is checked against the implication diagram, the exact F/E
    certificate search and the numeric certificate search. Discrepancies on
    graphs with a loop at a charged vertex are flagged, not failures.

    Args:
        query: JMESPath expression with custom functions nvl(value, default)
            and frac("p/q") -> number. Examples:
            - "[?profile.NPC && !profile.F]" - NPC but not fibered
            - "[?flagged]" - graphs with a loop at a charged vertex
            - "[?length(discrepancies) > `0`].{i: index, d: discrepancies}"
            - "[?length(graph.vertices[?frac(charge) < `0`]) > `0`]" - some negative charge

    Returns:
        PaginatedCensusResponse with rows, the summary and pagination info.

        Data items schema:
        {
            "type": "object",
            "properties": {
                "index": {"type": "integer"},
                "graph": {"type": "object", "description": "vertices [{id, charge}], edges [{id, ends, b}]"},
                "profile": {"type": "object", "description": "Property id to true/false/null"},
                "profile_key": {"type": "string", "description": "e.g. 'Im HI ¬F ¬E VF VE ¬NPC'"},
                "violations": {"type": "array", "items": {"type": "string"}},
                "discrepancies": {"type": "array", "description": "{kind, property, detail, flagged}"},
                "flagged": {"type": "boolean"},
                "certificates_checked": {"type": "integer"}
            }
        }
    """
    response = census.run_census(
        max_vertices=max_vertices,
        charges=charges,
        indices=indices,
        max_edges=max_edges,
        loops=loops,
        include_disconnected=include_disconnected,
        limit=limit,
        offset=offset,
        cache_key=cache_key,
        query=query,
        settings=settings,
    )
    if not response.success:
        raise ToolError(response.error)
    return response


# =============================================================================
# Cache Tools
# =============================================================================


@mcp.tool()
def get_cache_info(
    cache_key: Annotated[str, "Cache key from a previous run_census call"],
) -> CacheInfo:
    """
    Get information about a census cache entry.

    Returns:
        CacheInfo with validity and timing information
    """
    return census.get_cache_info(cache_key)


# =============================================================================
# Main Entry Point
# =============================================================================


def main() -> None:
    """Run the Graph Manifold MCP Server."""
    mcp.run()


if __name__ == "__main__":
    main()
