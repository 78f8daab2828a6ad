"""
Census cross-validation over small labelled graphs.

Every graph within the bounds is classified; the implication diagram is
checked, the F/E deciders are compared with the complete certificate search,
numeric certificates are compared one-sidedly with the continuous deciders,
and every certificate is checked and normalized. Discrepancies on graphs
with a loop at a charged vertex are flagged rather than counted as failures.
"""

import itertools
import logging
from collections import Counter
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from graphmanifold_mcp.core.decider import (
    Classification,
    SearchSettings,
    classify_all,
)
from graphmanifold_mcp.core.errors import BudgetExceededError, SearchExhaustedError
from graphmanifold_mcp.core.graph import LabeledGraph, has_charged_loop
from graphmanifold_mcp.core.oracle import (
    BknSolution,
    check_certificate,
    normalize_solution,
    residual,
    search_certificate_exact,
    search_certificate_numeric,
)
from graphmanifold_mcp.core.properties import ALL_PROPERTIES, CONTINUOUS_VARIANTS, PropertyId

logger = logging.getLogger(__name__)


# =============================================================================
# Types
# =============================================================================


DEFAULT_CHARGES = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1))

# one-sided cross-check grid for failing continuous verdicts
CENSUS_SEARCH = SearchSettings(budget=8, denominator=2)


@dataclass(frozen=True)
class CensusBounds:
    max_vertices: int = 3
    charges: tuple[Fraction, ...] = DEFAULT_CHARGES
    indices: tuple[int, ...] = (1, 2)
    max_edges: int = 4
    loops: bool = False
    connected_only: bool = True


@dataclass(frozen=True)
class Discrepancy:
    kind: str
    property: str | None
    detail: str
    flagged: bool


@dataclass(frozen=True)
class CensusRow:
    index: int
    graph: LabeledGraph
    profile: dict[PropertyId, bool | None]
    violations: tuple[str, ...]
    discrepancies: tuple[Discrepancy, ...]
    flagged: bool
    certificates_checked: int

    def profile_key(self) -> str:
        marks = {True: "", False: "¬", None: "?"}
        return " ".join(f"{marks[self.profile[p]]}{p}" for p in ALL_PROPERTIES)


@dataclass(frozen=True)
class CensusReport:
    bounds: CensusBounds
    rows: tuple[CensusRow, ...]
    profiles: dict[str, int] = field(default_factory=dict)

    @property
    def discrepancies(self) -> list[tuple[int, Discrepancy]]:
        return [(row.index, d) for row in self.rows for d in row.discrepancies]

    @property
    def implication_violations(self) -> int:
        return sum(len(row.violations) for row in self.rows)

    @property
    def ok(self) -> bool:
        return self.implication_violations == 0 and all(d.flagged for _, d in self.discrepancies)


# =============================================================================
# Enumeration
# =============================================================================


def _edge_slots(n: int, loops: bool) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n) if loops or i != j]


def _degrees(n: int, multiset: Sequence[tuple[int, int]]) -> list[int]:
    degree = [0] * n
    for i, j in multiset:
        degree[i] += 1
        degree[j] += 1
    return degree


def _connected(n: int, multiset: Sequence[tuple[int, int]]) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(multiset)
    return nx.is_connected(graph)


def enumerate_graphs(bounds: CensusBounds) -> Iterator[LabeledGraph]:
    """
    All labelled graphs within the bounds, in a fixed order.

    Edge multisets are kept when the vertex degree sequence is non-increasing;
    graphs equal under relabelling may still repeat.
    """
    if not bounds.charges:
        return
    for n in range(1, bounds.max_vertices + 1):
        names = [f"v{i + 1}" for i in range(n)]
        slots = _edge_slots(n, bounds.loops)
        for count in range(bounds.max_edges + 1):
            for multiset in itertools.combinations_with_replacement(slots, count):
                degree = _degrees(n, multiset)
                if any(degree[i] < degree[i + 1] for i in range(n - 1)):
                    continue
                if bounds.connected_only and not _connected(n, multiset):
                    continue
                for charges in itertools.product(bounds.charges, repeat=n):
                    for indices in itertools.product(bounds.indices, repeat=count):
                        edges = [
                            (f"e{k + 1}", names[i], names[j], b)
                            for k, ((i, j), b) in enumerate(zip(multiset, indices))
                        ]
                        yield LabeledGraph.from_edges(dict(zip(names, charges)), edges)


# =============================================================================
# Per-graph examination
# =============================================================================


def _certificate_discrepancies(
    g: LabeledGraph, sol: BknSolution, origin: str, flagged: bool
) -> list[Discrepancy]:
    found = []
    if not check_certificate(g, sol).valid:
        found.append(Discrepancy("invalid certificate", str(sol.variant), origin, flagged))
        return found
    normalized = normalize_solution(g, sol)
    if residual(g, normalized) != residual(g, sol) or not check_certificate(g, normalized).valid:
        found.append(Discrepancy("normalization drift", str(sol.variant), origin, flagged))
    return found


def examine_graph(
    g: LabeledGraph,
    exhaustive_limit: int,
    search: SearchSettings,
    index: int = 0,
) -> CensusRow:
    flagged = has_charged_loop(g)
    classification: Classification = classify_all(g, exhaustive_limit, search)
    discrepancies: list[Discrepancy] = [
        Discrepancy("classification", None, text, flagged) for text in classification.discrepancies
    ]
    checked = 0

    for verdict in classification.verdicts.values():
        if verdict.certificate is not None:
            checked += 1
            discrepancies += _certificate_discrepancies(g, verdict.certificate, "decider", flagged)

    for variant in (PropertyId.F, PropertyId.E):
        holds = classification.verdicts[variant].holds
        try:
            sol = search_certificate_exact(g, variant, exhaustive_limit)
        except BudgetExceededError:
            continue
        if sol is not None:
            checked += 1
            discrepancies += _certificate_discrepancies(g, sol, "exact search", flagged)
        if holds is not None and holds != (sol is not None):
            discrepancies.append(
                Discrepancy(
                    "exact-oracle mismatch",
                    str(variant),
                    f"decider says {holds}, exact search {'found' if sol else 'found nothing'}",
                    flagged,
                )
            )

    for variant in CONTINUOUS_VARIANTS:
        verdict = classification.verdicts[variant]
        if verdict.holds:
            if flagged and verdict.certificate is None:
                discrepancies.append(
                    Discrepancy("unconfirmed on flagged graph", str(variant), "decider holds, no certificate found", True)
                )
            continue
        if verdict.holds is None:
            continue
        # one-sided: a certificate for a failing verdict contradicts the decider
        try:
            sol = search_certificate_numeric(g, variant, search.budget, search.denominator)
        except SearchExhaustedError:
            sol = None
        if sol is not None:
            checked += 1
            discrepancies += _certificate_discrepancies(g, sol, "numeric search", flagged)
            discrepancies.append(
                Discrepancy("numeric contradiction", str(variant), "certificate found, decider fails", flagged)
            )

    return CensusRow(
        index=index,
        graph=g,
        profile=classification.profile(),
        violations=classification.violations,
        discrepancies=tuple(discrepancies),
        flagged=flagged,
        certificates_checked=checked,
    )


def _examine_indexed(args: tuple[int, LabeledGraph, int, SearchSettings]) -> CensusRow:
    index, g, limit, search = args
    return examine_graph(g, limit, search, index)


def run_census(
    bounds: CensusBounds,
    exhaustive_limit: int = 4096,
    search: SearchSettings | None = None,
    workers: int = 1,
) -> CensusReport:
    """Examine every graph within the bounds; rows keep enumeration order."""
    search = search or CENSUS_SEARCH
    jobs = ((i, g, exhaustive_limit, search) for i, g in enumerate(enumerate_graphs(bounds)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_examine_indexed, jobs, chunksize=16))
    else:
        rows = [_examine_indexed(job) for job in jobs]
    rows.sort(key=lambda row: row.index)

    profiles = Counter(row.profile_key() for row in rows)
    report = CensusReport(bounds, tuple(rows), dict(sorted(profiles.items())))
    logger.info(
        "census: %d graphs, %d profiles, %d implication violations, %d discrepancies",
        len(rows), len(profiles), report.implication_violations, len(report.discrepancies),
    )
    for index, discrepancy in report.discrepancies:
        if not discrepancy.flagged:
            logger.warning("graph #%d: %s %s", index, discrepancy.kind, discrepancy.detail)
    return report
