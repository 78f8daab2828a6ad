"""
Exact dense linear algebra over the rationals.

Matrices and vectors carry vertex-id labels so that kernel vectors and
principal submatrices can be reported in graph terms. Every operation works
on `fractions.Fraction` entries; nothing here rounds.
"""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from graphmanifold_mcp.core.errors import ContractError

logger = logging.getLogger(__name__)


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class RatVector:
    """A labelled rational vector."""

    labels: tuple[str, ...]
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.entries):
            raise ContractError("vector labels and entries differ in length")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, label: str) -> Fraction:
        return self.entries[self.labels.index(label)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.labels, self.entries))

    def is_nowhere_zero(self) -> bool:
        return len(self.entries) > 0 and all(x != 0 for x in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def scaled(self, factor: Fraction) -> "RatVector":
        return RatVector(self.labels, tuple(factor * x for x in self.entries))

    def primitive(self) -> "RatVector":
        """Scale to a primitive integer vector whose first nonzero entry is positive."""
        if self.is_zero():
            return self
        lcm = math.lcm(*(x.denominator for x in self.entries))
        integral = [int(x * lcm) for x in self.entries]
        gcd = math.gcd(*integral)
        first = next(x for x in integral if x != 0)
        sign = 1 if first > 0 else -1
        return RatVector(self.labels, tuple(Fraction(sign * x, gcd) for x in integral))


@dataclass(frozen=True)
class RatMatrix:
    """A dense rational matrix with labelled rows and columns."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.row_labels):
            raise ContractError("row count does not match row labels")
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ContractError("column count does not match column labels")

    @classmethod
    def square(cls, labels: Sequence[str], entries: Iterable[Iterable[Fraction | int]]) -> "RatMatrix":
        labels = tuple(labels)
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        return cls(labels, labels, rows)

    @classmethod
    def zeros(cls, labels: Sequence[str]) -> "RatMatrix":
        labels = tuple(labels)
        return cls(labels, labels, tuple(tuple(Fraction(0) for _ in labels) for _ in labels))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_labels), len(self.col_labels))

    @property
    def is_square(self) -> bool:
        return self.row_labels == self.col_labels

    def entry(self, row: str, col: str) -> Fraction:
        return self.entries[self.row_labels.index(row)][self.col_labels.index(col)]

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.shape)))

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        n = len(self.row_labels)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i + 1, n))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def apply(self, vector: RatVector) -> RatVector:
        if vector.labels != self.col_labels:
            raise ContractError("vector labels do not match matrix columns")
        values = tuple(
            sum((a * x for a, x in zip(row, vector.entries)), Fraction(0))
            for row in self.entries
        )
        return RatVector(self.row_labels, values)

    def to_table(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class Inertia:
    """Counts of positive, zero and negative eigenvalues of a symmetric matrix."""

    n_plus: int
    n_zero: int
    n_minus: int

    @property
    def has_negative(self) -> bool:
        return self.n_minus > 0

    @property
    def is_semipositive(self) -> bool:
        return self.n_minus == 0

    @property
    def is_singular(self) -> bool:
        return self.n_zero > 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


# =============================================================================
# Kernels
# =============================================================================


def _row_reduce(rows: list[list[Fraction]]) -> list[int]:
    """Reduce rows in place to reduced row echelon form; return pivot columns."""
    pivots: list[int] = []
    if not rows:
        return pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: RatMatrix) -> int:
    rows = [list(row) for row in m.entries]
    return len(_row_reduce(rows))


def kernel_basis(m: RatMatrix) -> list[RatVector]:
    """Exact basis of {x | m x = 0}; one vector per free column, in column order."""
    ncols = len(m.col_labels)
    rows = [list(row) for row in m.entries]
    pivots = _row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -rows[r][f]
        basis.append(RatVector(m.col_labels, tuple(x)))
    return basis


def nowhere_zero_kernel_vector(m: RatMatrix) -> RatVector | None:
    """
    Return a kernel vector with no zero entry, or None if none exists.

    Such a vector exists iff every coordinate is nonzero on some basis vector.
    The combination sum(t**j * basis[j]) is then nowhere zero for all but
    finitely many t; the smallest positive integer t that works is used and
    the result is scaled to a primitive integer vector.
    """
    if not m.col_labels:
        return None
    basis = kernel_basis(m)
    if not basis:
        return None
    n = len(m.col_labels)
    if any(all(vec.entries[i] == 0 for vec in basis) for i in range(n)):
        return None
    t = 1
    while True:
        combined = [
            sum((Fraction(t) ** j * vec.entries[i] for j, vec in enumerate(basis)), Fraction(0))
            for i in range(n)
        ]
        if all(x != 0 for x in combined):
            logger.debug("nowhere-zero combination of %d kernel vectors at t=%d", len(basis), t)
            return RatVector(m.col_labels, tuple(combined)).primitive()
        t += 1


# =============================================================================
# Inertia
# =============================================================================


def _schur_step(a: list[list[Fraction]], block: list[int]) -> list[list[Fraction]]:
    """Schur complement of the 1x1 or 2x2 pivot block, removing its rows/columns."""
    rest = [i for i in range(len(a)) if i not in block]
    if len(block) == 1:
        p = block[0]
        d = a[p][p]
        return [[a[i][j] - a[i][p] * a[p][j] / d for j in rest] for i in rest]
    p, q = block
    c = a[p][q]
    # the pivot block is [[0, c], [c, 0]] with inverse [[0, 1/c], [1/c, 0]]
    return [
        [a[i][j] - (a[i][p] * a[q][j] + a[i][q] * a[p][j]) / c for j in rest]
        for i in rest
    ]


def inertia(m: RatMatrix) -> Inertia:
    """
    Exact inertia of a symmetric matrix by congruence (symmetric pivoting).

    A nonzero diagonal entry is eliminated as a 1x1 pivot. When the whole
    diagonal vanishes but an off-diagonal entry c does not, the block
    [[0, c], [c, 0]] contributes one positive and one negative eigenvalue and
    is eliminated as a 2x2 pivot. Sylvester's law of inertia makes the counts
    exact.

    Raises:
        ContractError: if the matrix is not symmetric
    """
    if not m.is_symmetric():
        raise ContractError("inertia requires a symmetric matrix")
    a = [list(row) for row in m.entries]
    n_plus = n_zero = n_minus = 0
    while a:
        pivot = next((i for i in range(len(a)) if a[i][i] != 0), None)
        if pivot is not None:
            if a[pivot][pivot] > 0:
                n_plus += 1
            else:
                n_minus += 1
            a = _schur_step(a, [pivot])
            continue
        pair = next(
            ((i, j) for i in range(len(a)) for j in range(i + 1, len(a)) if a[i][j] != 0),
            None,
        )
        if pair is None:
            n_zero += len(a)
            break
        n_plus += 1
        n_minus += 1
        a = _schur_step(a, list(pair))
    return Inertia(n_plus, n_zero, n_minus)


# =============================================================================
# Submatrices
# =============================================================================


def principal_submatrix(m: RatMatrix, keep: Iterable[str]) -> RatMatrix:
    """
    Restrict rows and the corresponding columns to `keep`, preserving order.

    Raises:
        ContractError: if `keep` is empty, names an unknown label, or m is not square
    """
    if not m.is_square:
        raise ContractError("principal submatrices need a square matrix")
    wanted = set(keep)
    if not wanted:
        raise ContractError("principal submatrix needs a nonempty subset")
    unknown = wanted - set(m.row_labels)
    if unknown:
        raise ContractError(f"unknown labels: {sorted(unknown)}")
    indices = [i for i, label in enumerate(m.row_labels) if label in wanted]
    labels = tuple(m.row_labels[i] for i in indices)
    rows = tuple(tuple(m.entries[i][j] for j in indices) for i in indices)
    return RatMatrix(labels, labels, rows)
