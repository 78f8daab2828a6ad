"""
Matrices of a labelled graph and its graph of signed components.

    A^eps  diagonal k_v - sum over loop darts at v of eps/b,
           off-diagonal -sum over darts v -> v' of eps/b
    A^+    the same with |k_v| and 1/|b|, no signs
    H      diagonal s(v) k_v - sum over loop darts of 1/|b|,
           off-diagonal -sum of 1/|b| over darts v -> v' when k_v k_v' > 0, else 0

Sign assignments are constant on dart pairs, so every matrix built here is
exactly symmetric.
"""

import itertools
import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from graphmanifold_mcp.core.errors import ContractError
from graphmanifold_mcp.core.graph import LabeledGraph
from graphmanifold_mcp.core.linalg import RatMatrix

logger = logging.getLogger(__name__)


# =============================================================================
# Sign assignments
# =============================================================================


@dataclass(frozen=True)
class SignAssignment:
    """eps on geometric edges; the same sign on both darts of an edge."""

    signs: Mapping[str, int]

    def __post_init__(self) -> None:
        for edge_id, sign in self.signs.items():
            if sign not in (1, -1):
                raise ContractError(f"sign on edge {edge_id} must be +1 or -1, got {sign}")

    def __getitem__(self, edge_id: str) -> int:
        return self.signs[edge_id]

    def as_dict(self) -> dict[str, int]:
        return {e: self.signs[e] for e in sorted(self.signs)}


def constant_signs(g: LabeledGraph, sign: int = 1) -> SignAssignment:
    return SignAssignment({e.id: sign for e in g.edges()})


def sign_assignments(g: LabeledGraph) -> Iterator[SignAssignment]:
    """Every symmetric sign assignment, +1 before -1, in edge-id order."""
    ids = [e.id for e in g.edges()]
    for combo in itertools.product((1, -1), repeat=len(ids)):
        yield SignAssignment(dict(zip(ids, combo)))


# =============================================================================
# Matrices
# =============================================================================


def _assemble(g: LabeledGraph, diagonal: Mapping[str, Fraction], weight) -> RatMatrix:
    """Start from `diagonal` and subtract weight(dart) at (tail, head) for every dart."""
    labels = g.vertices
    index = {v: i for i, v in enumerate(labels)}
    rows = [[Fraction(0)] * len(labels) for _ in labels]
    for v in labels:
        rows[index[v]][index[v]] = diagonal[v]
    for dart_id in g.dart_ids:
        w = weight(dart_id)
        if w:
            dart = g.darts[dart_id]
            rows[index[dart.tail]][index[g.head(dart_id)]] -= w
    return RatMatrix.square(labels, rows)


def build_A_epsilon(g: LabeledGraph, eps: SignAssignment) -> RatMatrix:
    """
    A^eps for a symmetric sign assignment.

    Raises:
        ContractError: if eps misses an edge of g
    """
    missing = [e.id for e in g.edges() if e.id not in eps.signs]
    if missing:
        raise ContractError(f"sign assignment misses edges: {missing}")

    def weight(dart_id: str) -> Fraction:
        dart = g.darts[dart_id]
        return Fraction(eps[dart.edge], dart.b)

    return _assemble(g, g.charges, weight)


def build_A(g: LabeledGraph) -> RatMatrix:
    """A^eps for eps == +1 (the reduced plumbing matrix up to sign)."""
    return build_A_epsilon(g, constant_signs(g, 1))


def build_A_plus(g: LabeledGraph) -> RatMatrix:
    def weight(dart_id: str) -> Fraction:
        return Fraction(1, abs(g.darts[dart_id].b))

    return _assemble(g, {v: abs(k) for v, k in g.charges.items()}, weight)


# =============================================================================
# Signed components
# =============================================================================


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SignedComponents:
    """
    The quotient graph G(U, E0) and the sign function s.

    Classes are named by their smallest vertex id. Absorbed edges are the
    ones equivalent to a charged vertex; they are removed from the quotient.
    """

    classes: Mapping[str, tuple[str, ...]]
    class_of: Mapping[str, str]
    class_sign: Mapping[str, int]
    quotient_edges: tuple[str, ...]
    absorbed_edges: tuple[str, ...]
    bipartite: bool
    s: Mapping[str, int]


def signed_components(g: LabeledGraph) -> SignedComponents:
    """
    Compute vertex classes, the quotient edges E0, bipartiteness and s.

    Vertices are equivalent when joined by a path whose consecutive charges
    have positive product (every vertex is equivalent to itself). An edge is
    absorbed when a charged vertex is equivalent to both its ends. The
    quotient is bipartite when its classes admit colors sigma in {+1, -1}
    that flip across every quotient edge and agree with the sign of every
    charged class; then s(v) = sigma(class of v), otherwise s == 0.
    """
    relation = nx.Graph()
    relation.add_nodes_from(g.vertices)
    edges = g.edges()
    for e in edges:
        if not e.is_loop and g.charges[e.tail] * g.charges[e.head] > 0:
            relation.add_edge(e.tail, e.head)

    classes: dict[str, tuple[str, ...]] = {}
    class_of: dict[str, str] = {}
    for component in nx.connected_components(relation):
        members = tuple(sorted(component))
        classes[members[0]] = members
        for v in members:
            class_of[v] = members[0]
    classes = {name: classes[name] for name in sorted(classes)}
    class_sign = {name: _sign(g.charges[name]) for name in classes}

    quotient = nx.MultiGraph()
    quotient.add_nodes_from(classes)
    quotient_edges, absorbed = [], []
    for e in edges:
        a, b = class_of[e.tail], class_of[e.head]
        if a == b and class_sign[a] != 0:
            absorbed.append(e.id)
        else:
            quotient_edges.append(e.id)
            quotient.add_edge(a, b, key=e.id)

    sigma: dict[str, int] = {}
    bipartite = True
    for component in nx.connected_components(quotient):
        members = sorted(component)
        charged = [c for c in members if class_sign[c] != 0]
        root = charged[0] if charged else members[0]
        sigma[root] = class_sign[root] if charged else 1
        for parent, child in nx.bfs_edges(quotient, root):
            sigma[child] = -sigma[parent]
        if any(class_sign[c] not in (0, sigma[c]) for c in members):
            bipartite = False
    for a, b in quotient.edges():
        if sigma[a] == sigma[b]:
            bipartite = False

    if bipartite:
        s = {v: sigma[class_of[v]] for v in g.vertices}
    else:
        s = {v: 0 for v in g.vertices}
    logger.debug(
        "signed components: %d classes, %d quotient edges, bipartite=%s",
        len(classes), len(quotient_edges), bipartite,
    )
    return SignedComponents(
        classes=classes,
        class_of=class_of,
        class_sign=class_sign,
        quotient_edges=tuple(quotient_edges),
        absorbed_edges=tuple(absorbed),
        bipartite=bipartite,
        s=s,
    )


def build_H(g: LabeledGraph, components: SignedComponents | None = None) -> RatMatrix:
    components = components or signed_components(g)
    diagonal = {v: components.s[v] * g.charges[v] for v in g.vertices}

    def weight(dart_id: str) -> Fraction:
        dart = g.darts[dart_id]
        head = g.head(dart_id)
        if head == dart.tail or g.charges[dart.tail] * g.charges[head] > 0:
            return Fraction(1, abs(dart.b))
        return Fraction(0)

    return _assemble(g, diagonal, weight)
