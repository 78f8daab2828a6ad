"""
Type definitions for Graph Manifold MCP Server.

This module provides TypedDict definitions for every JSON document the tools
read or emit. Rationals are always rendered as "p/q" strings ("3" when the
denominator is 1), so documents stay exact and byte-stable.
"""

from typing_extensions import TypedDict


# =============================================================================
# Graph Documents
# =============================================================================


class VertexEntry(TypedDict):
    """
    One vertex (Seifert block) of a labelled graph.

    id: Vertex identifier
    charge: Rational charge k_v as "p/q"
    """

    id: str
    charge: str


class EdgeEntry(TypedDict):
    """
    One geometric edge (JSJ torus). Darts "<id>+" and "<id>-" run from the
    first end to the second and back.

    id: Edge identifier
    ends: The two end vertices; equal for a loop
    b: Nonzero intersection index
    """

    id: str
    ends: list[str]
    b: int


class GraphDocument(TypedDict):
    vertices: list[VertexEntry]
    edges: list[EdgeEntry]


class CertificateDocument(TypedDict):
    """
    An explicit solution of the BKN equations.

    a: Vertex id to nonnegative rational
    gamma: Dart id to rational in [-1, 1]
    variant: Property id the solution claims (Im, HI, F, E, VF, VE, NPC)
    """

    a: dict[str, str]
    gamma: dict[str, str]
    variant: str


# =============================================================================
# Classification Output
# =============================================================================


class WitnessRecord(TypedDict):
    """
    clause: Which criterion clause fired
    inertia: [n_plus, n_zero, n_minus] of the matrix the clause inspected
    kernel_vector: Nowhere-zero kernel vector, vertex id to "p/q"
    subset: Vertex support of a principal submatrix
    signs: Edge id to +1 / -1
    """

    clause: str
    inertia: list[int] | None
    kernel_vector: dict[str, str] | None
    subset: list[str] | None
    signs: dict[str, int] | None


class VerdictRecord(TypedDict):
    holds: bool | None
    witness: WitnessRecord | None
    certificate: CertificateDocument | None
    caveat: str | None
    undecided: str | None


class MatricesRecord(TypedDict):
    """Row/column labels and the rational tables of A (eps == +1), A^+ and H."""

    labels: list[str]
    A: list[list[str]]
    A_plus: list[list[str]]
    H: list[list[str]]


class SignedComponentsRecord(TypedDict):
    classes: dict[str, list[str]]
    class_sign: dict[str, int]
    quotient_edges: list[str]
    absorbed_edges: list[str]
    bipartite: bool
    s: dict[str, int]


class ImplicationsRecord(TypedDict):
    rules: list[str]
    violations: list[str]


class ClassifyOutput(TypedDict):
    """
    Full classification of one graph.

    verdicts: Property id to verdict record, in the order Im, HI, F, E, VF, VE, NPC
    discrepancies: Certificates that contradict a failing verdict
    warnings: Degenerate-graph notices and loop caveats moved out of verdicts
    """

    graph: GraphDocument
    verdicts: dict[str, VerdictRecord]
    matrices: MatricesRecord
    signed_components: SignedComponentsRecord
    implications: ImplicationsRecord
    discrepancies: list[str]
    warnings: list[str]


# =============================================================================
# Certificate Check Output
# =============================================================================


class ViolationRecord(TypedDict):
    constraint: str
    location: str
    detail: str


class CheckOutput(TypedDict):
    valid: bool
    variant: str
    residuals: dict[str, str]
    violations: list[ViolationRecord]


# =============================================================================
# Census Output
# =============================================================================


class DiscrepancyRecord(TypedDict):
    """
    kind: classification, exact-oracle mismatch, numeric contradiction,
        unconfirmed on flagged graph, invalid certificate, normalization drift
    property: Property id concerned, null when the discrepancy spans several
    flagged: True on graphs with a loop at a charged vertex
    """

    kind: str
    property: str | None
    detail: str
    flagged: bool


class CensusRowRecord(TypedDict):
    """
    One enumerated graph with its property profile.

    index: Position in enumeration order
    profile: Property id to holds (null when undecided)
    profile_key: Profile string such as "Im HI ¬F ¬E VF VE ¬NPC"
    """

    index: int
    graph: GraphDocument
    profile: dict[str, bool | None]
    profile_key: str
    violations: list[str]
    discrepancies: list[DiscrepancyRecord]
    flagged: bool
    certificates_checked: int


class CensusSummary(TypedDict):
    graphs: int
    profiles: dict[str, int]
    implication_violations: int
    discrepancies: int
    flagged_discrepancies: int
    ok: bool
