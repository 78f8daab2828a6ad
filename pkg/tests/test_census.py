"""
Unit tests for the census cross-validation.

Tests cover:
- enumerate_graphs: counts, order and bounds
- examine_graph: flagged and unflagged graphs
- run_census: implication checks, oracle agreement, worker pools
"""

import time
from fractions import Fraction

from graphmanifold_mcp.core import census
from graphmanifold_mcp.core.census import (
    CENSUS_SEARCH,
    CensusBounds,
    enumerate_graphs,
    examine_graph,
    run_census,
)
from graphmanifold_mcp.core.decider import SearchSettings
from graphmanifold_mcp.core.graph import validate
from graphmanifold_mcp.core.oracle import BknSolution
from graphmanifold_mcp.core.properties import PropertyId
from tests.sample_graphs import loop_graph, two_vertex

SEARCH = SearchSettings(budget=2000, denominator=4)

FLAGGED_LOOPS = CensusBounds(
    max_vertices=1,
    charges=(Fraction(2),),
    indices=(1,),
    max_edges=1,
    loops=True,
)


class TestEnumerateGraphs:
    """Tests for enumerate_graphs."""

    def test_counts_single_charge(self):
        bounds = CensusBounds(max_vertices=2, charges=(Fraction(1),), indices=(1,), max_edges=1)

        graphs = list(enumerate_graphs(bounds))

        assert len(graphs) == 2
        assert graphs[0].vertices == ("v1",)
        assert graphs[1].edges()[0].id == "e1"

    def test_disconnected_graphs_on_request(self):
        bounds = CensusBounds(
            max_vertices=2, charges=(Fraction(1),), indices=(1,), max_edges=1, connected_only=False
        )

        assert len(list(enumerate_graphs(bounds))) == 3

    def test_counts_are_labelled(self):
        bounds = CensusBounds(max_vertices=2, charges=(Fraction(1), Fraction(-1)), indices=(1, 2), max_edges=1)

        assert len(list(enumerate_graphs(bounds))) == 10

    def test_loops_only_when_allowed(self):
        with_loops = list(enumerate_graphs(FLAGGED_LOOPS))
        without = list(enumerate_graphs(CensusBounds(max_vertices=1, charges=(Fraction(2),), max_edges=1)))

        assert len(with_loops) == 2
        assert with_loops[1].edge("e1").is_loop
        assert len(without) == 1

    def test_empty_charge_set(self):
        assert list(enumerate_graphs(CensusBounds(charges=()))) == []

    def test_order_is_fixed(self):
        bounds = CensusBounds(max_vertices=2, max_edges=2)

        assert list(enumerate_graphs(bounds)) == list(enumerate_graphs(bounds))

    def test_graphs_are_valid(self):
        for g in enumerate_graphs(CensusBounds(max_vertices=3, max_edges=3, charges=(Fraction(1),))):
            assert validate(g) == []


class TestExamineGraph:
    """Tests for examine_graph."""

    def test_fibered_pair_is_clean(self, fibered_pair):
        row = examine_graph(fibered_pair, 4096, SEARCH)

        assert row.discrepancies == ()
        assert row.violations == ()
        assert not row.flagged
        assert row.certificates_checked > 0
        assert row.profile_key() == "Im HI F E VF VE ¬NPC"

    def test_only_failing_verdicts_are_searched(self, fibered_pair, monkeypatch):
        searched = []

        def record(g, variant, budget, denominator=6):
            searched.append(variant)
            return None

        monkeypatch.setattr(census, "search_certificate_numeric", record)

        row = examine_graph(fibered_pair, 4096, SEARCH)

        assert searched == [PropertyId.NPC]
        assert row.discrepancies == ()

    def test_certificate_for_failing_verdict_is_a_contradiction(self, fibered_pair, monkeypatch):
        bogus = BknSolution(
            a={"v1": Fraction(1), "v2": Fraction(1)},
            gamma={"e1+": Fraction(1, 2), "e1-": Fraction(1, 2)},
            variant=PropertyId.NPC,
        )
        monkeypatch.setattr(census, "search_certificate_numeric", lambda *args, **kwargs: bogus)

        row = examine_graph(fibered_pair, 4096, SEARCH)

        kinds = {(d.kind, d.property) for d in row.discrepancies}
        assert ("numeric contradiction", "NPC") in kinds
        assert ("invalid certificate", "NPC") in kinds
        assert not any(d.flagged for d in row.discrepancies)

    def test_charged_loop_npc_is_unconfirmed(self, charged_loop):
        row = examine_graph(charged_loop, 4096, SEARCH)

        assert row.flagged
        assert row.profile[PropertyId.NPC] is True
        kinds = {(d.kind, d.property) for d in row.discrepancies}
        assert ("unconfirmed on flagged graph", "NPC") in kinds
        assert all(d.flagged for d in row.discrepancies)

    def test_zero_charge_loop_is_not_flagged(self):
        row = examine_graph(loop_graph(0, 2), 4096, SEARCH)

        assert not row.flagged
        assert row.discrepancies == ()

    def test_embedding_agrees_with_exact_search(self):
        row = examine_graph(two_vertex(0, 5, 3), 4096, SEARCH)

        assert row.profile[PropertyId.E] is True
        assert not any(d.kind == "exact-oracle mismatch" for d in row.discrepancies)


class TestRunCensus:
    """Tests for run_census."""

    def test_small_loopless_census(self):
        report = run_census(CensusBounds(max_vertices=2, max_edges=2), 4096, SEARCH)

        assert len(report.rows) == 155
        assert report.implication_violations == 0
        assert report.discrepancies == []
        assert report.ok
        assert sum(report.profiles.values()) == len(report.rows)

    def test_rows_keep_enumeration_order(self):
        report = run_census(CensusBounds(max_vertices=2, max_edges=1), 4096, SEARCH)

        assert [row.index for row in report.rows] == list(range(len(report.rows)))

    def test_flagged_loop_discrepancies_are_reported(self):
        report = run_census(FLAGGED_LOOPS, 4096, SEARCH)

        assert report.discrepancies
        assert all(d.flagged for _, d in report.discrepancies)
        assert report.ok

    def test_empty_census(self):
        report = run_census(CensusBounds(charges=()), 4096, SEARCH)

        assert report.rows == ()
        assert report.profiles == {}
        assert report.ok

    def test_worker_pool_matches_serial_run(self):
        bounds = CensusBounds(max_vertices=2, max_edges=1, indices=(1,))

        serial = run_census(bounds, 4096, SEARCH)
        pooled = run_census(bounds, 4096, SEARCH, workers=2)

        assert [row.profile for row in pooled.rows] == [row.profile for row in serial.rows]
        assert pooled.profiles == serial.profiles

    def test_default_census_within_a_minute(self):
        start = time.perf_counter()
        report = run_census(CensusBounds())
        elapsed = time.perf_counter() - start

        kinds = {d.kind for _, d in report.discrepancies}
        assert elapsed < 60, f"default census took {elapsed:.1f} s"
        assert len(report.rows) > 0
        assert report.implication_violations == 0
        assert "exact-oracle mismatch" not in kinds
        assert "invalid certificate" not in kinds
        assert "classification" not in kinds
        assert report.ok

    def test_default_search_is_the_census_grid(self):
        report = run_census(CensusBounds(max_vertices=2, max_edges=1))
        explicit = run_census(CensusBounds(max_vertices=2, max_edges=1), 4096, CENSUS_SEARCH)

        assert [row.profile for row in report.rows] == [row.profile for row in explicit.rows]
        assert report.discrepancies == explicit.discrepancies
