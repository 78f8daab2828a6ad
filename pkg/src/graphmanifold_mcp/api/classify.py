"""
Classification API module.

Provides the classify_graph tool function and the renderers that turn
verdicts, matrices and signed components into JSON-ready records.
"""

from dataclasses import dataclass, replace

from graphmanifold_mcp.config import Settings
from graphmanifold_mcp.core.criteria import (
    SignedComponents,
    build_A,
    build_A_plus,
    build_H,
    signed_components,
)
from graphmanifold_mcp.core.decider import Classification, SearchSettings, Verdict, Witness, classify_all
from graphmanifold_mcp.core.errors import ContractError, GraphFormatError
from graphmanifold_mcp.core.graph import LabeledGraph, format_rational, graph_document, is_degenerate, parse_graph
from graphmanifold_mcp.core.oracle import certificate_document
from graphmanifold_mcp.core.properties import PropertyId, implication_rules
from graphmanifold_mcp.types import (
    ClassifyOutput,
    MatricesRecord,
    SignedComponentsRecord,
    VerdictRecord,
    WitnessRecord,
)


# =============================================================================
# Response Types
# =============================================================================


@dataclass
class ClassifyResponse:
    """
    Response for a graph classification.

    A budget-undecided verdict still returns data (success is True); the
    undecided properties are listed and error_kind is "budget".
    """

    success: bool
    data: ClassifyOutput | None = None
    undecided: list[str] | None = None
    error: str | None = None
    error_kind: str | None = None


# =============================================================================
# Renderers
# =============================================================================


def render_witness(witness: Witness | None) -> WitnessRecord | None:
    if witness is None:
        return None
    return {
        "clause": witness.clause,
        "inertia": list(witness.inertia.as_tuple()) if witness.inertia else None,
        "kernel_vector": (
            {v: format_rational(x) for v, x in witness.kernel_vector.as_dict().items()}
            if witness.kernel_vector is not None
            else None
        ),
        "subset": list(witness.subset) if witness.subset is not None else None,
        "signs": witness.signs.as_dict() if witness.signs is not None else None,
    }


def render_verdict(verdict: Verdict) -> VerdictRecord:
    return {
        "holds": verdict.holds,
        "witness": render_witness(verdict.witness),
        "certificate": certificate_document(verdict.certificate) if verdict.certificate else None,
        "caveat": verdict.caveat,
        "undecided": verdict.undecided,
    }


def render_matrices(g: LabeledGraph, components: SignedComponents) -> MatricesRecord:
    return {
        "labels": list(g.vertices),
        "A": build_A(g).to_table(),
        "A_plus": build_A_plus(g).to_table(),
        "H": build_H(g, components).to_table(),
    }


def render_components(components: SignedComponents) -> SignedComponentsRecord:
    return {
        "classes": {name: list(members) for name, members in components.classes.items()},
        "class_sign": dict(components.class_sign),
        "quotient_edges": list(components.quotient_edges),
        "absorbed_edges": list(components.absorbed_edges),
        "bipartite": components.bipartite,
        "s": {v: components.s[v] for v in sorted(components.s)},
    }


def classification_document(
    g: LabeledGraph,
    classification: Classification,
    only: PropertyId | None = None,
    flag_loops: bool = False,
) -> ClassifyOutput:
    """
    Assemble the classification output for one graph.

    With `only`, a single verdict is emitted. With `flag_loops`, loop caveats
    are removed from the verdicts and reported once under warnings.
    """
    warnings: list[str] = []
    if is_degenerate(g):
        warnings.append("degenerate graph: no edges and at most one vertex")
    verdicts = dict(classification.verdicts)
    if flag_loops:
        warnings.extend(sorted({v.caveat for v in verdicts.values() if v.caveat}))
        verdicts = {p: replace(v, caveat=None) for p, v in verdicts.items()}
    if only is not None:
        verdicts = {only: verdicts[only]}

    components = signed_components(g)
    return {
        "graph": graph_document(g),
        "verdicts": {str(p): render_verdict(v) for p, v in verdicts.items()},
        "matrices": render_matrices(g, components),
        "signed_components": render_components(components),
        "implications": {
            "rules": implication_rules(),
            "violations": list(classification.violations),
        },
        "discrepancies": list(classification.discrepancies),
        "warnings": warnings,
    }


# =============================================================================
# Tool Functions
# =============================================================================


def classify_graph(
    graph_json: str,
    property: str | None = None,
    budget: int | None = None,
    grid: int | None = None,
    search: bool = True,
    flag_loops: bool = False,
    settings: Settings | None = None,
) -> ClassifyResponse:
    """
    Decide all seven properties of a labelled graph.

    Args:
        graph_json: Graph document ({"vertices": [...], "edges": [...]})
        property: Emit only this property (Im, HI, F, E, VF, VE, NPC)
        budget: Enumeration limit for E/VE and LP-solve budget for certificate search
        grid: Denominator bound D of the certificate search grid
        search: Attach certificates to holding continuous verdicts
        flag_loops: Move loop caveats from the verdicts to warnings
        settings: Defaults for budget and grid

    Returns:
        ClassifyResponse with the classification output or error.
    """
    settings = settings or Settings()
    only = None
    if property is not None:
        try:
            only = PropertyId(property)
        except ValueError:
            return ClassifyResponse(
                success=False,
                error=f"unknown property {property!r}; expected one of {', '.join(p.value for p in PropertyId)}",
                error_kind="contract",
            )
    if (budget is not None and budget <= 0) or (grid is not None and grid <= 0):
        return ClassifyResponse(success=False, error="budget and grid must be positive", error_kind="contract")

    try:
        g = parse_graph(graph_json)
    except GraphFormatError as e:
        return ClassifyResponse(success=False, error=str(e), error_kind="parse")

    limit = budget or settings.exhaustive_limit
    search_settings = None
    if search:
        search_settings = SearchSettings(
            budget=budget or settings.search_budget,
            denominator=grid or settings.grid_denominator,
        )
    try:
        classification = classify_all(g, limit, search_settings)
    except ContractError as e:
        return ClassifyResponse(success=False, error=str(e), error_kind="contract")

    data = classification_document(g, classification, only, flag_loops)
    undecided = [str(p) for p, v in classification.verdicts.items() if v.holds is None]
    if only is not None:
        undecided = [p for p in undecided if p == str(only)]
    if undecided:
        reason = classification.verdicts[PropertyId(undecided[0])].undecided
        return ClassifyResponse(success=True, data=data, undecided=undecided, error=reason, error_kind="budget")
    return ClassifyResponse(success=True, data=data, undecided=[])
