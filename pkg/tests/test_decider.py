"""
Unit tests for the property deciders.

Tests cover:
- decide_im_hi, decide_f, decide_e, decide_vf, decide_ve, decide_npc
- the two-vertex closed forms and the zero-charge loop family
- classify_all: budgets, caveats, certificate attachment
- check_implications and implication_rules
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from graphmanifold_mcp.core import decider
from graphmanifold_mcp.core.decider import (
    LOOP_CAVEAT,
    SearchSettings,
    classify_all,
    decide_e,
    decide_f,
    decide_im_hi,
    decide_npc,
    decide_ve,
    decide_vf,
)
from graphmanifold_mcp.core.errors import BudgetExceededError
from graphmanifold_mcp.core.graph import LabeledGraph
from graphmanifold_mcp.core.oracle import check_certificate
from graphmanifold_mcp.core.properties import (
    ALL_PROPERTIES,
    PropertyId,
    check_implications,
    implication_rules,
)
from tests.sample_graphs import (
    GRID_CHARGES,
    GRID_INDICES,
    labeled_graphs,
    loop_graph,
    path,
    two_vertex,
    two_vertex_closed_form,
)

H = Fraction(1, 2)
P = PropertyId


class TestDecideImHi:
    """Tests for decide_im_hi."""

    def test_same_sign_singular(self):
        assert decide_im_hi(two_vertex(1, 1)).holds is True

    def test_mixed_signs(self):
        assert decide_im_hi(two_vertex(1, -1)).holds is False

    def test_negative_eigenvalue(self):
        verdict = decide_im_hi(two_vertex(H, 1))

        assert verdict.holds is True
        assert verdict.witness.inertia.has_negative


class TestDecideF:
    """Tests for decide_f."""

    def test_fibered_pair_certificate(self, fibered_pair):
        verdict = decide_f(fibered_pair)

        assert verdict.holds is True
        assert verdict.certificate.a == {"v1": 1, "v2": 1}
        assert set(verdict.certificate.gamma.values()) == {1}
        assert check_certificate(fibered_pair, verdict.certificate).valid

    @pytest.mark.parametrize("g", [two_vertex(1, 2), two_vertex(1, 1, 2)])
    def test_nonsingular(self, g):
        assert decide_f(g).holds is False

    def test_mixed_sign_kernel_vector(self):
        g = two_vertex(-1, -1)

        verdict = decide_f(g)

        assert verdict.holds is True
        assert check_certificate(g, verdict.certificate).valid


class TestDecideE:
    """Tests for decide_e."""

    def test_zero_charge_vertex(self):
        g = two_vertex(0, 5, 3)

        verdict = decide_e(g, 4096)

        assert verdict.holds is True
        assert verdict.witness.subset == ("v1",)
        assert verdict.certificate.a == {"v1": 1, "v2": 0}
        assert set(verdict.certificate.gamma.values()) == {0}
        assert check_certificate(g, verdict.certificate).valid

    def test_fibration_reused_on_whole_vertex_set(self, fibered_pair):
        verdict = decide_e(fibered_pair, 4096)

        assert verdict.holds is True
        assert verdict.witness.subset == ("v1", "v2")

    def test_opposite_signs(self):
        assert decide_e(two_vertex(1, -1), 4096).holds is False

    def test_negative_sign_on_loop(self):
        # k - 2 eps / b vanishes only for eps = -1
        g = loop_graph(-1, 2)

        verdict = decide_e(g, 4096)

        assert decide_f(g).holds is False
        assert verdict.holds is True
        assert verdict.witness.signs.as_dict() == {"e1": -1}
        assert verdict.certificate.gamma == {"e1+": -1, "e1-": -1}
        assert check_certificate(g, verdict.certificate).valid

    def test_budget(self):
        with pytest.raises(BudgetExceededError, match="undecided: budget"):
            decide_e(path([1, 1, 1]), 8)


class TestDecideVfVeNpc:
    """Tests for the H-matrix deciders."""

    @pytest.mark.parametrize(
        "k1,k2,expected",
        [(1, 1, True), (2, 2, False), (0, 0, True)],
    )
    def test_vf(self, k1, k2, expected):
        assert decide_vf(two_vertex(k1, k2)).holds is expected

    @pytest.mark.parametrize(
        "k1,k2,expected",
        [(0, 1, True), (1, -1, False), (1, 1, True)],
    )
    def test_ve(self, k1, k2, expected):
        assert decide_ve(two_vertex(k1, k2), 4096).holds is expected

    def test_ve_witness_subset(self):
        verdict = decide_ve(two_vertex(0, 1), 4096)

        assert verdict.witness.subset == ("v1",)

    @pytest.mark.parametrize(
        "k1,k2,expected",
        [(H, H, True), (1, 1, False), (0, 0, True)],
    )
    def test_npc(self, k1, k2, expected):
        assert decide_npc(two_vertex(k1, k2)).holds is expected

    def test_empty_graph_is_not_npc(self):
        assert decide_npc(LabeledGraph.from_edges({}, [])).holds is False

    def test_caveat_on_charged_loop(self, charged_loop):
        for verdict in (decide_vf(charged_loop), decide_npc(charged_loop)):
            assert verdict.caveat == LOOP_CAVEAT

    def test_no_caveat_on_zero_charge_loop(self):
        assert decide_npc(loop_graph(0)).caveat is None


class TestClosedForms:
    """The two-vertex family and the zero-charge loop family."""

    def test_two_vertex_grid(self):
        for k1 in GRID_CHARGES:
            for k2 in GRID_CHARGES:
                for b in GRID_INDICES:
                    profile = classify_all(two_vertex(k1, k2, b), 4096).profile()
                    expected = two_vertex_closed_form(k1, k2, b)
                    assert profile == expected, f"k=({k1},{k2}), b={b}"

    @pytest.mark.parametrize("b", [1, 2])
    def test_zero_charge_loop(self, b):
        profile = classify_all(loop_graph(0, b), 4096).profile()

        assert profile[P.F] is False
        assert profile[P.E] is False
        for p in (P.NPC, P.VF, P.VE, P.IM, P.HI):
            assert profile[p] is True

    def test_documented_charged_loop(self, charged_loop):
        profile = classify_all(charged_loop, 4096).profile()

        assert profile[P.F] is True
        assert profile[P.VF] is True
        assert profile[P.NPC] is True


class TestClassifyAll:
    """Tests for classify_all."""

    def test_fibered_pair_profile(self, fibered_pair):
        profile = classify_all(fibered_pair, 4096).profile()

        assert profile == {P.IM: True, P.HI: True, P.F: True, P.E: True, P.VF: True, P.VE: True, P.NPC: False}

    def test_opposite_signs_profile(self):
        profile = classify_all(two_vertex(1, -1), 4096).profile()

        assert set(profile.values()) == {False}

    def test_verdict_order(self, fibered_pair):
        assert tuple(classify_all(fibered_pair, 4096).verdicts) == ALL_PROPERTIES

    def test_budget_becomes_undecided(self):
        classification = classify_all(path([1, 1, 1]), 4)

        assert classification.verdicts[P.E].holds is None
        assert classification.verdicts[P.E].undecided.startswith("undecided: budget")
        assert classification.verdicts[P.VE].holds is None
        assert classification.verdicts[P.F].holds is not None

    def test_npc_certificate_from_search(self, half_pair):
        classification = classify_all(half_pair, 4096, SearchSettings())

        certificate = classification.verdicts[P.NPC].certificate
        assert certificate is not None
        assert certificate.a == {"v1": 1, "v2": 1}
        assert certificate.gamma == {"e1+": H, "e1-": H}

    def test_certificates_inherited_from_fibration(self, fibered_pair):
        classification = classify_all(fibered_pair, 4096, SearchSettings())

        for p in (P.F, P.E, P.VF, P.VE, P.HI, P.IM):
            certificate = classification.verdicts[p].certificate
            assert certificate is not None, p
            assert certificate.variant is p
            assert check_certificate(fibered_pair, certificate).valid
        assert classification.verdicts[P.NPC].certificate is None
        assert classification.discrepancies == ()

    def test_failing_verdicts_are_not_searched(self, monkeypatch):
        searched = []

        def record(g, variant, budget, denominator=6):
            searched.append(variant)
            return None

        monkeypatch.setattr(decider, "search_certificate_numeric", record)

        classification = classify_all(path([2, 2, 2, 2, 2]), 4096, SearchSettings())

        assert all(v.holds is False for v in classification.verdicts.values())
        assert searched == []

    def test_witness_present_when_holding(self, half_pair):
        for verdict in classify_all(half_pair, 4096).verdicts.values():
            if verdict.holds:
                assert verdict.witness is not None

    @given(labeled_graphs(max_vertices=3, max_edges=3))
    @settings(max_examples=60, deadline=None)
    def test_exact_certificates_are_sound(self, g):
        classification = classify_all(g, 4096)

        for p in (P.F, P.E):
            verdict = classification.verdicts[p]
            if verdict.holds:
                assert check_certificate(g, verdict.certificate).valid
        if classification.verdicts[P.F].holds:
            assert classification.verdicts[P.E].holds


class TestImplications:
    """Tests for check_implications."""

    def test_fibered_without_embedded(self):
        assert check_implications({P.F: True, P.E: False}) == ["F⇒E"]

    def test_npc_without_vf(self):
        assert check_implications({P.NPC: True, P.VF: False}) == ["NPC⇒VF"]

    def test_im_hi_mismatch(self):
        assert check_implications({P.IM: True, P.HI: False}) == ["Im⇔HI"]

    def test_undecided_entries_are_skipped(self):
        assert check_implications({P.F: True, P.E: None}) == []

    def test_fibered_pair_has_no_violation(self, fibered_pair):
        assert classify_all(fibered_pair, 4096).violations == ()

    def test_rules(self):
        assert implication_rules() == ["F⇒E", "F⇒VF", "E⇒VE", "VF⇒VE", "VF⇒HI", "VE⇒Im", "NPC⇒VF", "Im⇔HI"]
