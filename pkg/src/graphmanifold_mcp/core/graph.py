"""
Labelled graphs of graph manifolds.

A labelled graph carries a rational charge k_v on every vertex and a nonzero
integer intersection index b_w on every dart. Darts come in pairs {w, -w}; a
pair is one geometric edge (one JSJ torus). A loop at v puts both of its darts
into boundary(v).

Document format (UTF-8 JSON):

    {"vertices": [{"id": "v1", "charge": "1/2"}, ...],
     "edges":    [{"id": "e1", "ends": ["v1", "v2"], "b": 1}, ...]}

Dart ids are derived from edge ids: "e1+" runs from the first end to the
second, "e1-" runs back.
"""

import json
import logging
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from graphmanifold_mcp.core.errors import GraphFormatError

logger = logging.getLogger(__name__)

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


# =============================================================================
# Rational parsing
# =============================================================================


def parse_rational(value: Any) -> Fraction:
    """
    Parse an exact rational from a "p/q" or "p" string or a JSON integer.

    Floating point input is rejected: charges must be exact.

    Raises:
        ValueError: if the value is not an exact rational literal
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r} (use a string like \"1/2\")")
    match = _RATIONAL_RE.match(value)
    if match is None:
        raise ValueError(f"not a rational: {value!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Render a rational exactly as "p/q", or "p" when integral."""
    return str(Fraction(value))


# =============================================================================
# Graph Types
# =============================================================================


@dataclass(frozen=True)
class Dart:
    """A directed edge w with its reverse -w."""

    id: str
    edge: str
    tail: str
    opp: str
    b: int


@dataclass(frozen=True)
class GeometricEdge:
    """The unordered dart pair {w, -w}."""

    id: str
    forward: str
    backward: str
    tail: str
    head: str
    b: int

    @property
    def darts(self) -> tuple[str, str]:
        return (self.forward, self.backward)

    @property
    def endpoints(self) -> tuple[str, str]:
        return (self.tail, self.head)

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class LabeledGraph:
    """
    Vertices with rational charges and paired darts with integer indices.

    Instances are immutable. The constructor does not validate; use
    `validate()` or build through `from_edges()` / `parse_graph()`.
    All orderings are id-lexicographic.
    """

    charges: Mapping[str, Fraction]
    darts: Mapping[str, Dart] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls,
        charges: Mapping[str, Fraction | int | str],
        edges: Iterable[tuple[str, str, str, int]],
    ) -> "LabeledGraph":
        """Build a graph from (edge id, first end, second end, b) tuples."""
        parsed = {v: parse_rational(k) if not isinstance(k, Fraction) else k for v, k in charges.items()}
        darts: dict[str, Dart] = {}
        for edge_id, first, second, b in edges:
            forward, backward = f"{edge_id}+", f"{edge_id}-"
            darts[forward] = Dart(id=forward, edge=edge_id, tail=first, opp=backward, b=b)
            darts[backward] = Dart(id=backward, edge=edge_id, tail=second, opp=forward, b=b)
        return cls(
            charges={v: parsed[v] for v in sorted(parsed)},
            darts={d: darts[d] for d in sorted(darts)},
        )

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.charges))

    @property
    def dart_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.darts))

    def charge(self, vertex: str) -> Fraction:
        return self.charges[vertex]

    def head(self, dart: str) -> str:
        return self.darts[self.darts[dart].opp].tail

    def boundary(self, vertex: str) -> tuple[str, ...]:
        """Darts starting at the vertex; a loop contributes both of its darts."""
        return tuple(d for d in self.dart_ids if self.darts[d].tail == vertex)

    def edges(self) -> tuple[GeometricEdge, ...]:
        """Geometric edges ordered by edge id; the smaller dart id is the forward dart."""
        pairs: dict[str, list[str]] = {}
        for dart_id in self.dart_ids:
            pairs.setdefault(self.darts[dart_id].edge, []).append(dart_id)
        result = []
        for edge_id in sorted(pairs):
            forward = pairs[edge_id][0]
            dart = self.darts[forward]
            result.append(
                GeometricEdge(
                    id=edge_id,
                    forward=forward,
                    backward=dart.opp,
                    tail=dart.tail,
                    head=self.head(forward),
                    b=dart.b,
                )
            )
        return tuple(result)

    def edge(self, edge_id: str) -> GeometricEdge:
        for edge in self.edges():
            if edge.id == edge_id:
                return edge
        raise KeyError(edge_id)


# =============================================================================
# Derived graphs and predicates
# =============================================================================


def induced_subgraph(g: LabeledGraph, keep: Iterable[str]) -> LabeledGraph:
    """Restrict to `keep`; only edges with both ends kept survive."""
    kept = set(keep)
    unknown = kept - set(g.charges)
    if unknown:
        raise KeyError(f"unknown vertices: {sorted(unknown)}")
    darts = {
        d: dart
        for d, dart in g.darts.items()
        if dart.tail in kept and g.head(d) in kept
    }
    return LabeledGraph(
        charges={v: g.charges[v] for v in sorted(kept)},
        darts={d: darts[d] for d in sorted(darts)},
    )


def has_charged_loop(g: LabeledGraph) -> bool:
    """True when some loop sits at a vertex with nonzero charge."""
    return any(e.is_loop and g.charges[e.tail] != 0 for e in g.edges())


def is_degenerate(g: LabeledGraph) -> bool:
    """Empty graph, or a single vertex without edges."""
    return len(g.charges) == 0 or (len(g.charges) == 1 and not g.darts)


# =============================================================================
# Validation
# =============================================================================


def validate(g: LabeledGraph) -> list[str]:
    """Return the invariant violations of a graph; empty iff well formed."""
    violations: list[str] = []
    for vertex, charge in g.charges.items():
        if not isinstance(charge, Fraction):
            violations.append(f"non-rational charge at vertex {vertex}: {charge!r}")
    per_edge: dict[str, list[str]] = {}
    for dart_id in g.dart_ids:
        dart = g.darts[dart_id]
        per_edge.setdefault(dart.edge, []).append(dart_id)
        if dart.tail not in g.charges:
            violations.append(f"unknown vertex {dart.tail} at dart {dart_id}")
        if dart.b == 0:
            violations.append(f"zero intersection index on dart {dart_id}")
        if dart.opp == dart_id:
            violations.append(f"self-paired dart {dart_id}")
            continue
        opp = g.darts.get(dart.opp)
        if opp is None:
            violations.append(f"dart {dart_id} is paired with missing dart {dart.opp}")
            continue
        if opp.opp != dart_id:
            violations.append(f"involution broken at dart {dart_id}")
        if opp.edge != dart.edge:
            violations.append(f"dart pair {dart_id}/{opp.id} spans edges {dart.edge} and {opp.edge}")
        if opp.b != dart.b and dart_id < opp.id:
            violations.append(f"index mismatch on edge {dart.edge}: {dart.b} != {opp.b}")
    for edge_id, members in per_edge.items():
        if len(members) != 2:
            violations.append(f"edge {edge_id} has {len(members)} darts")
    return violations


# =============================================================================
# Document codec
# =============================================================================


def _line_of(text: str, token: str) -> int | None:
    position = text.find(json.dumps(token))
    if position < 0:
        return None
    return text.count("\n", 0, position) + 1


def parse_graph(text: str) -> LabeledGraph:
    """
    Parse and validate a graph document.

    Raises:
        GraphFormatError: on JSON syntax errors (with line/column), unknown or
            duplicate ids, malformed charges, zero or non-integer indices
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"syntax error: {e.msg}", e.lineno, e.colno) from e

    if not isinstance(document, dict):
        raise GraphFormatError("document must be a JSON object", 1)
    vertices = document.get("vertices", [])
    edges = document.get("edges", [])
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphFormatError("'vertices' and 'edges' must be lists", 1)

    charges: dict[str, Fraction] = {}
    for index, entry in enumerate(vertices):
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise GraphFormatError(f"vertices[{index}]: expected an object with a string 'id'")
        vertex = entry["id"]
        line = _line_of(text, vertex)
        if vertex in charges:
            raise GraphFormatError(f"vertices[{index}]: duplicate vertex id {vertex!r}", line)
        if "charge" not in entry:
            raise GraphFormatError(f"vertices[{index}]: missing charge", line)
        try:
            charges[vertex] = parse_rational(entry["charge"])
        except ValueError as e:
            raise GraphFormatError(f"vertices[{index}].charge: {e}", line) from e

    seen_edges: set[str] = set()
    parsed_edges: list[tuple[str, str, str, int]] = []
    for index, entry in enumerate(edges):
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise GraphFormatError(f"edges[{index}]: expected an object with a string 'id'")
        edge_id = entry["id"]
        line = _line_of(text, edge_id)
        if edge_id in seen_edges:
            raise GraphFormatError(f"edges[{index}]: duplicate edge id {edge_id!r}", line)
        seen_edges.add(edge_id)
        ends = entry.get("ends")
        if not isinstance(ends, list) or len(ends) != 2 or not all(isinstance(v, str) for v in ends):
            raise GraphFormatError(f"edges[{index}].ends: expected two vertex ids", line)
        for end in ends:
            if end not in charges:
                raise GraphFormatError(f"edges[{index}].ends: unknown vertex {end!r}", line)
        b = entry.get("b")
        if isinstance(b, bool) or not isinstance(b, int):
            raise GraphFormatError(f"edges[{index}].b: intersection index must be an integer", line)
        if b == 0:
            raise GraphFormatError(f"edges[{index}].b: zero intersection index", line)
        parsed_edges.append((edge_id, ends[0], ends[1], b))

    graph = LabeledGraph.from_edges(charges, parsed_edges)
    violations = validate(graph)
    if violations:
        raise GraphFormatError(violations[0])
    logger.debug("parsed graph with %d vertices and %d edges", len(charges), len(parsed_edges))
    return graph


def graph_document(g: LabeledGraph) -> dict[str, Any]:
    """Return the JSON-ready document for a graph."""
    return {
        "vertices": [{"id": v, "charge": format_rational(g.charges[v])} for v in g.vertices],
        "edges": [
            {"id": e.id, "ends": [e.tail, e.head], "b": e.b}
            for e in g.edges()
        ],
    }


def serialize_graph(g: LabeledGraph) -> str:
    """Render a graph document; parse_graph(serialize_graph(g)) reproduces g."""
    return json.dumps(graph_document(g), indent=2) + "\n"
