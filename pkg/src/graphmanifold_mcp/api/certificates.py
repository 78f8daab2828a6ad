"""
Certificates API module.

Provides the check_certificate tool function: validate an explicit BKN
solution against one property variant of a graph.
"""

from dataclasses import dataclass

from graphmanifold_mcp.core import oracle
from graphmanifold_mcp.core.errors import CertificateFormatError, ContractError, GraphFormatError
from graphmanifold_mcp.core.graph import format_rational, parse_graph
from graphmanifold_mcp.types import CheckOutput


# =============================================================================
# Response Types
# =============================================================================


@dataclass
class CheckResponse:
    """Response for a certificate check; an invalid certificate is still a success."""

    success: bool
    data: CheckOutput | None = None
    error: str | None = None
    error_kind: str | None = None


# =============================================================================
# Tool Functions
# =============================================================================


def check_certificate(graph_json: str, certificate_json: str) -> CheckResponse:
    """
    Check a certificate exactly against the constraints of its variant.

    Args:
        graph_json: Graph document
        certificate_json: Certificate document ({"a": {...}, "gamma": {...}, "variant": "VF"})

    Returns:
        CheckResponse with validity, residuals and violations, or a parse error.
    """
    try:
        g = parse_graph(graph_json)
    except GraphFormatError as e:
        return CheckResponse(success=False, error=f"graph: {e}", error_kind="parse")
    try:
        sol = oracle.parse_certificate(certificate_json, g)
    except CertificateFormatError as e:
        return CheckResponse(success=False, error=f"certificate: {e}", error_kind="parse")
    try:
        report = oracle.check_certificate(g, sol)
    except ContractError as e:
        return CheckResponse(success=False, error=str(e), error_kind="contract")

    return CheckResponse(
        success=True,
        data={
            "valid": report.valid,
            "variant": str(sol.variant),
            "residuals": {v: format_rational(r) for v, r in sorted(report.residuals.items())},
            "violations": [
                {"constraint": x.constraint, "location": x.location, "detail": x.detail}
                for x in report.violations
            ],
        },
    )
