"""
Exact rational linear feasibility.

A `LinearProgram` is a set of equalities over box-bounded variables, each
bound optionally strict. It is brought into standard form (nonnegative
variables, equality rows) and solved by a two-phase tableau simplex with
Bland's rule on `Fraction` entries.

Strict bounds are handled with one slack variable t shared by every strict
side: x >= lower + t and x <= upper - t, with 0 <= t <= 1. The program is
solved maximizing t and is feasible iff the optimum is positive.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from graphmanifold_mcp.core.errors import ContractError
from graphmanifold_mcp.core.linalg import RatVector

logger = logging.getLogger(__name__)


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class Bound:
    """Box bound for one variable; None means unbounded on that side."""

    lower: Fraction | None = None
    upper: Fraction | None = None
    strict_lower: bool = False
    strict_upper: bool = False

    @classmethod
    def closed(cls, lower: Fraction | int, upper: Fraction | int) -> "Bound":
        return cls(Fraction(lower), Fraction(upper))

    @classmethod
    def open(cls, lower: Fraction | int, upper: Fraction | int) -> "Bound":
        return cls(Fraction(lower), Fraction(upper), True, True)

    @classmethod
    def positive(cls) -> "Bound":
        return cls(lower=Fraction(0), strict_lower=True)

    @property
    def is_strict(self) -> bool:
        return (self.strict_lower and self.lower is not None) or (
            self.strict_upper and self.upper is not None
        )


@dataclass(frozen=True)
class Equality:
    """sum(coefficients[i] * x_i) == rhs"""

    coefficients: tuple[Fraction, ...]
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Equality constraints over bounded variables; pure feasibility or max-slack."""

    variables: tuple[str, ...]
    equalities: tuple[Equality, ...] = ()
    bounds: tuple[Bound, ...] = ()
    maximize_slack: bool = False

    def __post_init__(self) -> None:
        if len(self.bounds) != len(self.variables):
            raise ContractError("one bound per variable is required")
        for eq in self.equalities:
            if len(eq.coefficients) != len(self.variables):
                raise ContractError("equality width does not match variable count")
        for bound in self.bounds:
            if bound.lower is not None and bound.upper is not None and bound.lower > bound.upper:
                raise ContractError(f"empty box [{bound.lower}, {bound.upper}]")


@dataclass(frozen=True)
class LpResult:
    point: RatVector
    slack: Fraction | None = None


# =============================================================================
# Tableau simplex
# =============================================================================


@dataclass
class _Tableau:
    rows: list[list[Fraction]]
    basis: list[int]
    pivots: int = field(default=0)

    def pivot(self, r: int, c: int) -> None:
        lead = self.rows[r][c]
        self.rows[r] = [x / lead for x in self.rows[r]]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                factor = row[c]
                self.rows[i] = [x - factor * y for x, y in zip(row, self.rows[r])]
        self.basis[r] = c
        self.pivots += 1

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * row[-1] for b, row in zip(self.basis, self.rows)), Fraction(0))

    def optimize(self, cost: Sequence[Fraction], ncols: int) -> bool:
        """Maximize cost over the first ncols columns; False if unbounded."""
        while True:
            basic = set(self.basis)
            entering = None
            for j in range(ncols):
                if j in basic:
                    continue
                reduced = cost[j] - sum(
                    (cost[b] * row[j] for b, row in zip(self.basis, self.rows)), Fraction(0)
                )
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return True
            best: tuple[Fraction, int] | None = None
            leaving = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (row[-1] / row[entering], self.basis[i])
                    if best is None or key < best:
                        best, leaving = key, i
            if leaving is None:
                return False
            self.pivot(leaving, entering)


def _standard_form_solve(
    a: list[list[Fraction]], b: list[Fraction], c: list[Fraction]
) -> list[Fraction] | None:
    """max c.z subject to a z = b, z >= 0; None if infeasible."""
    m, n = len(a), len(c)
    rows = []
    for i in range(m):
        row, rhs = list(a[i]), b[i]
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    tableau = _Tableau(rows, [n + i for i in range(m)])

    phase_one = [Fraction(0)] * n + [Fraction(-1)] * m
    tableau.optimize(phase_one, n + m)
    if tableau.value(phase_one) < 0:
        return None

    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= n:
            column = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if column is None:
                del tableau.rows[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, column)
        i += 1
    tableau.rows = [row[:n] + [row[-1]] for row in tableau.rows]

    if any(c):
        if not tableau.optimize(c, n):
            raise ContractError("linear program is unbounded")
    z = [Fraction(0)] * n
    for basic, row in zip(tableau.basis, tableau.rows):
        z[basic] = row[-1]
    logger.debug("simplex finished after %d pivots", tableau.pivots)
    return z


# =============================================================================
# Public API
# =============================================================================


def _term_range(c: Fraction, bound: Bound) -> tuple[Fraction | None, bool, Fraction | None, bool]:
    """Range of c * x over the box of x as (low, low_open, high, high_open); None is infinite."""
    low = None if bound.lower is None else c * bound.lower
    high = None if bound.upper is None else c * bound.upper
    if c > 0:
        return low, bound.strict_lower, high, bound.strict_upper
    return high, bound.strict_upper, low, bound.strict_lower


def rows_admit(lp: LinearProgram) -> bool:
    """
    Whether every equality, taken alone, can be met inside the boxes.

    A necessary condition for feasibility; exact when no variable appears in
    two equalities.
    """
    for eq in lp.equalities:
        low: Fraction | None = Fraction(0)
        high: Fraction | None = Fraction(0)
        low_open = high_open = False
        for c, bound in zip(eq.coefficients, lp.bounds):
            if c == 0:
                continue
            t_low, t_low_open, t_high, t_high_open = _term_range(c, bound)
            low = None if low is None or t_low is None else low + t_low
            high = None if high is None or t_high is None else high + t_high
            low_open = low_open or t_low_open
            high_open = high_open or t_high_open
        if low is not None and (eq.rhs < low or (low_open and eq.rhs == low)):
            return False
        if high is not None and (eq.rhs > high or (high_open and eq.rhs == high)):
            return False
    return True


def lp_solve(lp: LinearProgram) -> LpResult | None:
    """Return a feasible point (and the optimal slack when strict) or None."""
    if not rows_admit(lp):
        return None
    strict = lp.maximize_slack or any(bound.is_strict for bound in lp.bounds)
    ncols = 0

    def new_column() -> int:
        nonlocal ncols
        ncols += 1
        return ncols - 1

    slack = new_column() if strict else None
    # x_i = constant + sum(coef * z_j)
    affine: list[tuple[Fraction, dict[int, Fraction]]] = []
    extra: list[tuple[dict[int, Fraction], Fraction]] = []
    for bound in lp.bounds:
        low_t = Fraction(int(bound.strict_lower and slack is not None))
        up_t = Fraction(int(bound.strict_upper and slack is not None))
        if bound.lower is not None:
            p = new_column()
            terms = {p: Fraction(1)}
            if low_t:
                terms[slack] = low_t
            affine.append((bound.lower, terms))
            if bound.upper is not None:
                q = new_column()
                row = {p: Fraction(1), q: Fraction(1)}
                if low_t + up_t:
                    row[slack] = low_t + up_t
                extra.append((row, bound.upper - bound.lower))
        elif bound.upper is not None:
            q = new_column()
            terms = {q: Fraction(-1)}
            if up_t:
                terms[slack] = -up_t
            affine.append((bound.upper, terms))
        else:
            p, q = new_column(), new_column()
            affine.append((Fraction(0), {p: Fraction(1), q: Fraction(-1)}))

    cap = None
    if slack is not None:
        cap = new_column()
        extra.append(({slack: Fraction(1), cap: Fraction(1)}, Fraction(1)))

    a_rows: list[list[Fraction]] = []
    b_vals: list[Fraction] = []
    for eq in lp.equalities:
        row = [Fraction(0)] * ncols
        rhs = eq.rhs
        for coefficient, (constant, terms) in zip(eq.coefficients, affine):
            if coefficient == 0:
                continue
            rhs -= coefficient * constant
            for j, v in terms.items():
                row[j] += coefficient * v
        a_rows.append(row)
        b_vals.append(rhs)
    for terms, rhs in extra:
        row = [Fraction(0)] * ncols
        for j, v in terms.items():
            row[j] += v
        a_rows.append(row)
        b_vals.append(rhs)

    cost = [Fraction(0)] * ncols
    if slack is not None:
        cost[slack] = Fraction(1)
    z = _standard_form_solve(a_rows, b_vals, cost)
    if z is None:
        return None
    t = z[slack] if slack is not None else None
    if t is not None and any(bound.is_strict for bound in lp.bounds) and t <= 0:
        return None
    point = tuple(
        constant + sum((v * z[j] for j, v in terms.items()), Fraction(0))
        for constant, terms in affine
    )
    return LpResult(RatVector(lp.variables, point), t)


def lp_feasible(lp: LinearProgram) -> RatVector | None:
    """An exact feasible point of the program, or None if it is infeasible."""
    result = lp_solve(lp)
    return result.point if result is not None else None


def satisfies(lp: LinearProgram, point: RatVector) -> bool:
    """Check every equality and bound exactly."""
    for eq in lp.equalities:
        if sum((a * x for a, x in zip(eq.coefficients, point.entries)), Fraction(0)) != eq.rhs:
            return False
    for bound, x in zip(lp.bounds, point.entries):
        if bound.lower is not None and (x < bound.lower or (bound.strict_lower and x == bound.lower)):
            return False
        if bound.upper is not None and (x > bound.upper or (bound.strict_upper and x == bound.upper)):
            return False
    return True
