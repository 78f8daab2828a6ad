"""
Unit tests for exact LP feasibility.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphmanifold_mcp.core.errors import ContractError
from graphmanifold_mcp.core.lp import (
    Bound,
    Equality,
    LinearProgram,
    lp_feasible,
    lp_solve,
    rows_admit,
    satisfies,
)
from tests.sample_graphs import rationals


def program(variables, equalities, bounds) -> LinearProgram:
    return LinearProgram(
        variables=tuple(variables),
        equalities=tuple(Equality(tuple(Fraction(c) for c in coefs), Fraction(rhs)) for coefs, rhs in equalities),
        bounds=tuple(bounds),
    )


class TestLpFeasible:
    """Tests for lp_feasible and lp_solve."""

    def test_point_on_the_boundary(self):
        lp = program(["x"], [([1], 1)], [Bound.closed(-1, 1)])

        point = lp_feasible(lp)

        assert point is not None
        assert point["x"] == 1

    def test_outside_the_box(self):
        lp = program(["x"], [([1], 2)], [Bound.closed(-1, 1)])

        assert lp_feasible(lp) is None

    def test_strict_bounds_maximize_slack(self):
        lp = program(["x", "y"], [([1, 1], 1)], [Bound.open(0, 1), Bound.open(0, 1)])

        result = lp_solve(lp)

        assert result is not None
        assert result.point.entries == (Fraction(1, 2), Fraction(1, 2))
        assert result.slack == Fraction(1, 2)
        assert satisfies(lp, result.point)

    def test_strict_bounds_without_interior(self):
        lp = program(["x", "y"], [([1, 1], 0)], [Bound.positive(), Bound.positive()])

        assert lp_feasible(lp) is None

    def test_free_variable(self):
        lp = program(["x", "y"], [([1, -1], 3)], [Bound(), Bound.closed(0, 1)])

        point = lp_feasible(lp)

        assert point is not None
        assert satisfies(lp, point)

    def test_negative_right_hand_side(self):
        lp = program(["x", "y"], [([1, 1], -1)], [Bound.closed(-1, 0), Bound.closed(-1, 0)])

        point = lp_feasible(lp)

        assert point is not None
        assert point["x"] + point["y"] == -1

    def test_redundant_equalities(self):
        lp = program(["x", "y"], [([1, 1], 1), ([2, 2], 2)], [Bound.closed(0, 1), Bound.closed(0, 1)])

        assert lp_feasible(lp) is not None

    def test_empty_box_is_a_contract_error(self):
        with pytest.raises(ContractError):
            program(["x"], [], [Bound.closed(1, 0)])

    def test_one_bound_per_variable(self):
        with pytest.raises(ContractError):
            program(["x", "y"], [], [Bound.closed(0, 1)])

    @given(
        st.lists(rationals, min_size=1, max_size=4),
        st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=3),
    )
    @settings(max_examples=100, deadline=None)
    def test_feasible_systems_are_solved(self, point, rows):
        n = len(point)
        bounds = [Bound.closed(x - 1, x + 1) for x in point]
        equalities = [(row[:n], sum(c * x for c, x in zip(row[:n], point))) for row in rows]
        lp = program([f"x{i}" for i in range(n)], equalities, bounds)

        found = lp_feasible(lp)

        assert found is not None
        assert satisfies(lp, found)


class TestRowsAdmit:
    """Tests for the single-row screen run before the simplex."""

    def test_row_out_of_reach(self):
        lp = program(["x", "y"], [([1, 1], 3)], [Bound.closed(-1, 1), Bound.closed(-1, 1)])

        assert not rows_admit(lp)
        assert lp_feasible(lp) is None

    def test_open_boundary_is_rejected(self):
        lp = program(["x", "y"], [([1, -1], 2)], [Bound.open(-1, 1), Bound.closed(-1, 1)])

        assert not rows_admit(lp)

    def test_closed_boundary_is_admitted(self):
        lp = program(["x", "y"], [([1, -1], 2)], [Bound.closed(-1, 1), Bound.closed(-1, 1)])

        assert rows_admit(lp)

    def test_unbounded_variable_admits_any_row(self):
        lp = program(["x", "y"], [([1, 5], 40)], [Bound.closed(0, 1), Bound.positive()])

        assert rows_admit(lp)

    def test_coupled_rows_can_pass_and_still_be_infeasible(self):
        # each row alone is satisfiable, together they force x = 1 and x = -1
        lp = program(["x"], [([1], 1), ([1], -1)], [Bound.closed(-1, 1)])

        assert rows_admit(lp)
        assert lp_feasible(lp) is None

    @given(
        st.lists(rationals, min_size=1, max_size=4),
        st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=3),
    )
    @settings(max_examples=100, deadline=None)
    def test_never_rejects_a_feasible_program(self, point, rows):
        n = len(point)
        bounds = [Bound.open(x - 1, x + 1) for x in point]
        equalities = [(row[:n], sum(c * x for c, x in zip(row[:n], point))) for row in rows]

        assert rows_admit(program([f"x{i}" for i in range(n)], equalities, bounds))
