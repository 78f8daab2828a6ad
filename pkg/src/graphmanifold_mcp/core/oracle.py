"""
Certificates for the BKN equation.

The equation over a labelled graph, at every vertex v:

    sum over w in boundary(v) of gamma_w * a_head(w) / b_w  ==  k_v * a_v

A certificate is a solution {a, gamma} tagged with the property it witnesses.
This module checks certificates exactly, normalizes them, and searches for
them: completely for F and E, best-effort over a rational a-grid for the
continuous variants.
"""

import itertools
import json
import logging
import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any

import networkx as nx

from graphmanifold_mcp.core.criteria import build_A
from graphmanifold_mcp.core.errors import (
    BudgetExceededError,
    CertificateFormatError,
    ContractError,
    SearchExhaustedError,
)
from graphmanifold_mcp.core.graph import LabeledGraph, format_rational, parse_rational
from graphmanifold_mcp.core.linalg import RatMatrix, RatVector, kernel_basis, nowhere_zero_kernel_vector
from graphmanifold_mcp.core.lp import Bound, Equality, LinearProgram, lp_feasible
from graphmanifold_mcp.core.properties import PropertyId

logger = logging.getLogger(__name__)

ONE = Fraction(1)
ZERO = Fraction(0)


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class BknSolution:
    """A candidate solution {a_v, gamma_w} with the variant it claims."""

    a: Mapping[str, Fraction]
    gamma: Mapping[str, Fraction]
    variant: PropertyId

    def retagged(self, variant: PropertyId) -> "BknSolution":
        return replace(self, variant=variant)

    def scaled(self, factor: Fraction) -> "BknSolution":
        return replace(self, a={v: factor * x for v, x in self.a.items()})


@dataclass(frozen=True)
class Violation:
    constraint: str
    location: str
    detail: str


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    residuals: Mapping[str, Fraction]
    violations: tuple[Violation, ...] = field(default_factory=tuple)


# =============================================================================
# Residuals and checks
# =============================================================================


def _check_dimensions(g: LabeledGraph, sol: BknSolution) -> None:
    if set(sol.a) != set(g.charges):
        raise ContractError("solution vertices do not match the graph")
    if set(sol.gamma) != set(g.darts):
        raise ContractError("solution darts do not match the graph")


def residual(g: LabeledGraph, sol: BknSolution) -> dict[str, Fraction]:
    """
    Per-vertex residual: sum of gamma_w a_head / b_w minus k_v a_v.

    Raises:
        ContractError: if the solution is not dimensioned to g
    """
    _check_dimensions(g, sol)
    result = {}
    for v in g.vertices:
        total = -g.charges[v] * sol.a[v]
        for w in g.boundary(v):
            gamma = sol.gamma[w]
            if gamma:
                total += gamma * sol.a[g.head(w)] / g.darts[w].b
        result[v] = total
    return result


def _sign_pattern_exists(g: LabeledGraph, gamma: Mapping[str, Fraction]) -> bool:
    """True iff gamma_w = eps(tail) * eps(head) for some eps: V -> {+1, -1}."""
    parity = nx.Graph()
    parity.add_nodes_from(g.vertices)
    for e in g.edges():
        sign = gamma[e.forward]
        if e.is_loop:
            if sign != 1:
                return False
            continue
        if parity.has_edge(e.tail, e.head) and parity.edges[e.tail, e.head]["sign"] != sign:
            return False
        parity.add_edge(e.tail, e.head, sign=sign)
    for component in nx.connected_components(parity):
        root = min(component)
        eps = {root: 1}
        for parent, child in nx.bfs_edges(parity, root):
            eps[child] = eps[parent] * parity.edges[parent, child]["sign"]
        for a, b, data in parity.subgraph(component).edges(data=True):
            if eps[a] * eps[b] != data["sign"]:
                return False
    return True


def check_certificate(g: LabeledGraph, sol: BknSolution) -> CheckReport:
    """Check a certificate exactly: the equation, base constraints, then the variant clause."""
    try:
        residuals = residual(g, sol)
    except ContractError as e:
        return CheckReport(False, {}, (Violation("dimension", "solution", str(e)),))

    violations: list[Violation] = []

    def fail(constraint: str, location: str, detail: str) -> None:
        violations.append(Violation(constraint, location, detail))

    for v, r in residuals.items():
        if r != 0:
            fail("equation", v, f"residual {r}")

    # base constraints
    for v in g.vertices:
        if sol.a[v] < 0:
            fail("nonnegative", v, f"a = {sol.a[v]} is negative")
    if all(x == 0 for x in sol.a.values()):
        fail("nontrivial", "a", "trivial solution: a is identically zero")
    for w in g.dart_ids:
        if abs(sol.gamma[w]) > 1:
            fail("gamma bound", w, f"|gamma| = {abs(sol.gamma[w])} exceeds 1")
    for e in g.edges():
        if sol.gamma[e.forward] * sol.gamma[e.backward] == -1:
            fail("antipodal pair", e.id, "gamma_w * gamma_-w = -1")

    variant = sol.variant
    needs_positive = variant in (PropertyId.HI, PropertyId.F, PropertyId.VF, PropertyId.NPC)
    needs_symmetric = variant in (PropertyId.F, PropertyId.VF, PropertyId.VE, PropertyId.NPC)
    if needs_positive:
        for v in g.vertices:
            if sol.a[v] <= 0:
                fail("positivity", v, f"a = {sol.a[v]} must be positive")
    if needs_symmetric:
        for e in g.edges():
            if sol.gamma[e.forward] != sol.gamma[e.backward]:
                fail("symmetry", e.id, "gamma_w != gamma_-w")

    if variant is PropertyId.HI:
        for e in g.edges():
            forward, backward = sol.gamma[e.forward], sol.gamma[e.backward]
            if (abs(forward) == 1 or abs(backward) == 1) and forward != backward:
                fail("boundary symmetry", e.id, "|gamma| = 1 requires gamma_w = gamma_-w")
    elif variant is PropertyId.F:
        if any(abs(sol.gamma[w]) != 1 for w in g.dart_ids):
            fail("sign pattern", "gamma", "gamma must be +1 or -1 on every dart")
        elif not _sign_pattern_exists(g, sol.gamma):
            fail("sign pattern", "gamma", "gamma is not eps(tail) * eps(head) for any eps")
    elif variant is PropertyId.E:
        # an edge passes on its own with gamma_w = gamma_-w = +1 or -1, or through an
        # end with a = 0 whose incident gamma all vanish
        cleared = {
            v
            for v in g.vertices
            if sol.a[v] == 0
            and all(
                sol.gamma[e.forward] == 0 and sol.gamma[e.backward] == 0
                for e in g.edges()
                if v in (e.tail, e.head)
            )
        }
        for e in g.edges():
            forward, backward = sol.gamma[e.forward], sol.gamma[e.backward]
            if forward == backward and abs(forward) == 1:
                continue
            if e.tail in cleared or e.head in cleared:
                continue
            if sol.a[e.tail] == 0 or sol.a[e.head] == 0:
                fail("embedded pattern", e.id, "gamma must vanish around a zero vertex")
            else:
                fail("embedded pattern", e.id, "gamma_w = gamma_-w = +1 or -1 required")
    elif variant is PropertyId.NPC:
        for w in g.dart_ids:
            if not -1 < sol.gamma[w] < 1:
                fail("open interval", w, "γ not in open interval (-1, 1)")

    return CheckReport(not violations, residuals, tuple(violations))


def normalize_solution(g: LabeledGraph, sol: BknSolution) -> BknSolution:
    """Zero gamma on every dart whose ends carry a zero value of a."""
    gamma = {
        w: ZERO if sol.a[g.darts[w].tail] * sol.a[g.head(w)] == 0 else sol.gamma[w]
        for w in g.dart_ids
    }
    return replace(sol, gamma=gamma)


def inherit_certificate(g: LabeledGraph, sol: BknSolution, variant: PropertyId) -> BknSolution | None:
    """Re-tag a certificate to another variant if it passes the check there."""
    candidate = sol.retagged(variant)
    return candidate if check_certificate(g, candidate).valid else None


# =============================================================================
# Certificate documents
# =============================================================================


def certificate_document(sol: BknSolution) -> dict[str, Any]:
    return {
        "a": {v: format_rational(sol.a[v]) for v in sorted(sol.a)},
        "gamma": {w: format_rational(sol.gamma[w]) for w in sorted(sol.gamma)},
        "variant": str(sol.variant),
    }


def serialize_certificate(sol: BknSolution) -> str:
    return json.dumps(certificate_document(sol), indent=2) + "\n"


def parse_certificate(text: str | Mapping[str, Any], g: LabeledGraph) -> BknSolution:
    """
    Parse a certificate document against its graph.

    Raises:
        CertificateFormatError: on bad JSON, unknown or missing ids, bad rationals or variant
    """
    if isinstance(text, str):
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise CertificateFormatError(f"syntax error: {e.msg} (line {e.lineno}, column {e.colno})") from e
    else:
        document = text
    if not isinstance(document, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    try:
        variant = PropertyId(document.get("variant"))
    except ValueError as e:
        raise CertificateFormatError(f"unknown variant {document.get('variant')!r}") from e

    def read(section: str, expected: set[str]) -> dict[str, Fraction]:
        raw = document.get(section)
        if not isinstance(raw, dict):
            raise CertificateFormatError(f"'{section}' must be an object")
        unknown = set(raw) - expected
        if unknown:
            raise CertificateFormatError(f"'{section}' references unknown ids: {sorted(unknown)}")
        missing = expected - set(raw)
        if missing:
            raise CertificateFormatError(f"'{section}' misses ids: {sorted(missing)}")
        values = {}
        for key, value in raw.items():
            try:
                values[key] = parse_rational(value)
            except ValueError as e:
                raise CertificateFormatError(f"{section}.{key}: {e}") from e
        return values

    return BknSolution(
        a=read("a", set(g.charges)),
        gamma=read("gamma", set(g.darts)),
        variant=variant,
    )


# =============================================================================
# Exact search (F, E)
# =============================================================================


def fibration_certificate(g: LabeledGraph, x: RatVector) -> BknSolution:
    """a = |x|, gamma_w = sgn(x_tail) sgn(x_head) for a nowhere-zero kernel vector of A."""
    sign = {v: 1 if x[v] > 0 else -1 for v in g.vertices}
    return BknSolution(
        a={v: abs(x[v]) for v in g.vertices},
        gamma={w: Fraction(sign[g.darts[w].tail] * sign[g.head(w)]) for w in g.dart_ids},
        variant=PropertyId.F,
    )


def exhaustive_cases(g: LabeledGraph) -> int:
    return 2 ** len(g.edges()) * 2 ** len(g.charges)


def supports(vertices: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
    """Nonempty vertex subsets, by size then lexicographically."""
    for size in range(1, len(vertices) + 1):
        yield from itertools.combinations(vertices, size)


def _embedded_rows(g: LabeledGraph, support: tuple[str, ...], signs: Mapping[str, int]) -> list[list[Fraction]]:
    """Coefficients of the equation restricted to `support`, one row per support vertex."""
    inside = set(support)
    rows = []
    for v in support:
        row = {u: Fraction(0) for u in support}
        row[v] -= g.charges[v]
        for w in g.boundary(v):
            head = g.head(w)
            if head in inside:
                row[head] += Fraction(signs[g.darts[w].edge], g.darts[w].b)
        rows.append([row[u] for u in support])
    return rows


def _positive_kernel_point(support: tuple[str, ...], rows: list[list[Fraction]]) -> dict[str, Fraction] | None:
    """A strictly positive solution of rows * a = 0, or None."""
    basis = kernel_basis(RatMatrix(support, support, tuple(tuple(r) for r in rows)))
    if not basis:
        return None
    if len(basis) == 1:
        x = basis[0].primitive()
        return x.as_dict() if all(value > 0 for value in x.entries) else None
    point = lp_feasible(
        LinearProgram(
            variables=support,
            equalities=tuple(Equality(tuple(r), ZERO) for r in rows),
            bounds=tuple(Bound.positive() for _ in support),
        )
    )
    return point.as_dict() if point is not None else None


def search_certificate_exact(g: LabeledGraph, variant: PropertyId, budget: int) -> BknSolution | None:
    """
    Complete certificate search for F and E.

    F uses the kernel route on A. E enumerates supports S and symmetric signs
    on S-internal edges and asks for a > 0 on S in the kernel of the restricted
    system: read off directly for a one-dimensional kernel, by LP otherwise.

    Raises:
        ContractError: for variants other than F and E
        BudgetExceededError: if the enumeration does not fit the budget
    """
    if variant is PropertyId.F:
        x = nowhere_zero_kernel_vector(build_A(g))
        return fibration_certificate(g, x) if x is not None else None
    if variant is not PropertyId.E:
        raise ContractError(f"exact search covers F and E, not {variant}")
    needed = exhaustive_cases(g)
    if needed > budget:
        raise BudgetExceededError(needed, budget)

    for support in supports(g.vertices):
        inside = set(support)
        internal = [e for e in g.edges() if e.tail in inside and e.head in inside]
        for combo in itertools.product((1, -1), repeat=len(internal)):
            signs = {e.id: s for e, s in zip(internal, combo)}
            point = _positive_kernel_point(support, _embedded_rows(g, support, signs))
            if point is None:
                continue
            a = {v: point[v] if v in inside else ZERO for v in g.vertices}
            gamma = {w: ZERO for w in g.dart_ids}
            for e in internal:
                gamma[e.forward] = gamma[e.backward] = Fraction(signs[e.id])
            sol = BknSolution(a, gamma, PropertyId.E)
            logger.debug("E certificate on support %s", support)
            return sol
    return None


# =============================================================================
# Numeric search (continuous variants)
# =============================================================================


def _grid(support: tuple[str, ...], denominator: int) -> Iterator[dict[str, Fraction]]:
    """Primitive integer vectors in {1..D}^S, lexicographically from all ones."""
    for values in itertools.product(range(1, denominator + 1), repeat=len(support)):
        if math.gcd(*values) == 1:
            yield {v: Fraction(x) for v, x in zip(support, values)}


def _gamma_lp(
    g: LabeledGraph,
    a: Mapping[str, Fraction],
    variant: PropertyId,
    strict: frozenset[str] = frozenset(),
) -> tuple[LinearProgram, dict[str, int]]:
    """LP in gamma for fixed a; returns the program and the dart -> variable map."""
    symmetric = variant in (PropertyId.VF, PropertyId.VE, PropertyId.NPC)
    column: dict[str, int] = {}
    names: list[str] = []
    if symmetric:
        for e in g.edges():
            column[e.forward] = column[e.backward] = len(names)
            names.append(e.id)
    else:
        for w in g.dart_ids:
            column[w] = len(names)
            names.append(w)
    equalities = []
    for v in g.vertices:
        row = [ZERO] * len(names)
        for w in g.boundary(v):
            row[column[w]] += a[g.head(w)] / g.darts[w].b
        equalities.append(Equality(tuple(row), g.charges[v] * a[v]))
    bounds = []
    for name in names:
        if variant is PropertyId.NPC or name in strict:
            bounds.append(Bound.open(-1, 1))
        else:
            bounds.append(Bound.closed(-1, 1))
    return LinearProgram(tuple(names), tuple(equalities), tuple(bounds)), column


def _solve_gamma(
    g: LabeledGraph, a: Mapping[str, Fraction], variant: PropertyId
) -> BknSolution | None:
    strict: frozenset[str] = frozenset()
    # one retry: darts breaking the post-hoc conditions are pinned strictly inside the box
    for _ in range(2):
        lp, column = _gamma_lp(g, a, variant, strict)
        point = lp_feasible(lp)
        if point is None:
            return None
        gamma = {w: point.entries[column[w]] for w in g.dart_ids}
        sol = normalize_solution(g, BknSolution(dict(a), gamma, variant))
        offending = set()
        for e in g.edges():
            forward, backward = sol.gamma[e.forward], sol.gamma[e.backward]
            if forward * backward == -1:
                offending.add(e.forward)
            elif variant is PropertyId.HI and (abs(forward) == 1 or abs(backward) == 1) and forward != backward:
                offending.update((e.forward, e.backward))
        if not offending:
            return sol
        strict = strict | frozenset(offending)
    return None


def search_certificate_numeric(
    g: LabeledGraph,
    variant: PropertyId,
    budget: int,
    denominator: int = 6,
) -> BknSolution | None:
    """
    Best-effort rational certificate search for Im, HI, VF, VE and NPC.

    Supports S (a = 0 off S) run from the full vertex set down; for each
    primitive integer a on S with entries up to `denominator`, the equation is
    linear in gamma and solved by LP under the variant's boxes. Every returned
    solution passes check_certificate. Not finding one refutes nothing.

    Raises:
        ContractError: for F and E (use the exact search)
        SearchExhaustedError: if `budget` LP solves run out before the grid is covered
    """
    if variant in (PropertyId.F, PropertyId.E):
        raise ContractError(f"{variant} has a complete search; use search_certificate_exact")
    if not g.charges:
        return None
    needs_full_support = variant in (PropertyId.HI, PropertyId.VF, PropertyId.NPC)
    if needs_full_support:
        candidates = [g.vertices]
    else:
        candidates = sorted(supports(g.vertices), key=lambda s: (-len(s), s))

    solves = 0
    for support in candidates:
        for point in _grid(support, denominator):
            if solves >= budget:
                raise SearchExhaustedError(budget)
            solves += 1
            a = {v: point.get(v, ZERO) for v in g.vertices}
            sol = _solve_gamma(g, a, variant)
            if sol is not None and check_certificate(g, sol).valid:
                logger.debug("%s certificate after %d LP solves", variant, solves)
                return sol
    return None
