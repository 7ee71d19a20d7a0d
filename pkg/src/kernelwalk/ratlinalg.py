"""Exact rational dense linear algebra and the Abel-limit engine.

All arithmetic is over Fraction; nothing here ever rounds.  The Abel limit
of a substochastic matrix is computed algebraically as the spectral
projection onto ker(I-P) along im(I-P), with the resolvent formula
(1-s)(I-sP)^{-1} kept only as a numeric cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InconsistentSystem, NotSemisimple, SingularMatrix

Rational = Fraction


class RationalMatrix:
    """Dense matrix of Fractions; values are treated as immutable."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[Fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls([[Fraction(1)] * cols for _ in range(rows)])

    @classmethod
    def row_vector(cls, seq):
        return cls([list(seq)])

    @classmethod
    def column_vector(cls, seq):
        return cls([[x] for x in seq])

    @classmethod
    def diagonal(cls, seq):
        seq = list(seq)
        n = len(seq)
        return cls([[seq[i] if i == j else Fraction(0) for j in range(n)]
                    for i in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i):
        return tuple(self.data[i])

    def column(self, j):
        return tuple(row[j] for row in self.data)

    @property
    def T(self):
        return RationalMatrix([list(col) for col in zip(*self.data)])

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(ra, rb)]
                               for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other):
        return RationalMatrix([[a - b for a, b in zip(ra, rb)]
                               for ra, rb in zip(self.data, other.data)])

    def __neg__(self):
        return RationalMatrix([[-a for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            bt = list(zip(*other.data))
            return RationalMatrix(
                [[sum(a * b for a, b in zip(row, col) if a) for col in bt]
                 for row in self.data])
        return RationalMatrix([[a * other for a in row] for row in self.data])

    def __rmul__(self, scalar):
        return RationalMatrix([[scalar * a for a in row] for row in self.data])

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.data == other.data)

    def __repr__(self):
        return f"RationalMatrix({self.data!r})"

    @property
    def is_square(self):
        return self.rows == self.cols

    def trace(self):
        return sum(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def row_sums(self):
        return tuple(sum(row) for row in self.data)

    def is_substochastic(self):
        return (all(x >= 0 for row in self.data for x in row)
                and all(s <= 1 for s in self.row_sums()))

    def is_stochastic(self):
        return (all(x >= 0 for row in self.data for x in row)
                and all(s == 1 for s in self.row_sums()))

    def is_nonnegative(self):
        return all(x >= 0 for row in self.data for x in row)

    def to_lists(self):
        return [list(row) for row in self.data]


def _integer_rows(M: RationalMatrix):
    """Scale each row to integers, reduced by the row gcd."""
    out = []
    for row in M.data:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        ints = [int(x * mult) for x in row]
        g = gcd(*ints) if any(ints) else 0
        out.append([x // g for x in ints] if g else ints)
    return out


def _reduced_echelon(int_rows, ncols):
    """Fraction-free Gauss-Jordan on integer rows.

    Pivot choice is the first row with a nonzero entry, scanning columns
    left to right.  Returns (rows, pivot_columns); each returned row is an
    integer row whose pivot entry divides it into the rational RREF row.
    """
    rows = [row[:] for row in int_rows]
    nrows = len(rows)
    pivots = []
    pr = 0
    for pc in range(ncols):
        piv = next((i for i in range(pr, nrows) if rows[i][pc]), None)
        if piv is None:
            continue
        rows[pr], rows[piv] = rows[piv], rows[pr]
        p = rows[pr][pc]
        for i in range(nrows):
            if i == pr or not rows[i][pc]:
                continue
            f = rows[i][pc]
            rows[i] = [p * a - f * b for a, b in zip(rows[i], rows[pr])]
            g = gcd(*rows[i]) if any(rows[i]) else 0
            if g > 1:
                rows[i] = [a // g for a in rows[i]]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows[:pr], pivots


def _rref(M: RationalMatrix):
    """Rational reduced row echelon form with the pivot columns."""
    rows, pivots = _reduced_echelon(_integer_rows(M), M.cols)
    out = []
    for row, pc in zip(rows, pivots):
        p = Fraction(row[pc])
        out.append([Fraction(a) / p for a in row])
    return out, pivots


def rank(M: RationalMatrix) -> int:
    return len(_rref(M)[1])


def kernel_basis(M: RationalMatrix):
    """Basis of the right null space: vectors v with M v = 0.

    Vectors are returned as tuples in the deterministic free-variable
    parametrization of the RREF.
    """
    rref, pivots = _rref(M)
    basis = []
    for free in (c for c in range(M.cols) if c not in pivots):
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][free]
        basis.append(tuple(v))
    return basis


def image_basis(M: RationalMatrix):
    """Basis of the column space: the original columns at the pivot positions."""
    _, pivots = _rref(M)
    return [M.column(j) for j in pivots]


def solve(M: RationalMatrix, rhs):
    """One solution x of M x = rhs (free variables set to zero)."""
    rhs = list(rhs)
    if len(rhs) != M.rows:
        raise ValueError("rhs length mismatch")
    aug = RationalMatrix([row + [b] for row, b in zip(M.to_lists(), rhs)])
    rref, pivots = _rref(aug)
    if M.cols in pivots:
        raise InconsistentSystem("no solution")
    x = [Fraction(0)] * M.cols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][M.cols]
    return tuple(x)


def invert(M: RationalMatrix) -> RationalMatrix:
    if not M.is_square:
        raise ValueError("not square")
    n = M.rows
    aug = RationalMatrix([row + [Fraction(i == j) for j in range(n)]
                          for i, row in enumerate(M.to_lists())])
    rref, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return RationalMatrix([row[n:] for row in rref])


def abel_limit(P: RationalMatrix) -> RationalMatrix:
    """Abel limit of a substochastic matrix, exactly.

    Returns the projection Omega onto ker(I-P) along im(I-P), satisfying
    Omega = Omega^2 = P Omega = Omega P.  Zero matrix when 1 is not an
    eigenvalue.  Raises NotSemisimple when the two spaces intersect, in
    which case no such projection exists.
    """
    if not P.is_square:
        raise ValueError("not square")
    if not P.is_substochastic():
        raise ValueError("matrix is not substochastic")
    n = P.rows
    B = RationalMatrix.identity(n) - P
    V = kernel_basis(B)
    if not V:
        return RationalMatrix.zeros(n)
    W = kernel_basis(B.T)
    m = len(V)
    # semisimplicity at 1 <=> the m x m pairing of left and right kernels
    # is invertible
    C = RationalMatrix([[sum(w[i] * v[i] for i in range(n)) for v in V]
                        for w in W])
    try:
        Ci = invert(C)
    except SingularMatrix:
        raise NotSemisimple("ker(I-P) meets im(I-P)") from None
    Vm = RationalMatrix([[V[j][i] for j in range(m)] for i in range(n)])
    Wm = RationalMatrix([list(w) for w in W])
    omega = Vm * Ci * Wm
    assert omega.trace() == m
    return omega


def abel_numeric(P: RationalMatrix, s) -> RationalMatrix:
    """(1-s)(I-sP)^{-1} computed exactly; cross-check oracle for abel_limit."""
    s = Fraction(s)
    if not 0 < s < 1:
        raise ValueError("s must lie in (0,1)")
    n = P.rows
    return (1 - s) * invert(RationalMatrix.identity(n) - s * P)


def fixed_space_dimension(P: RationalMatrix) -> int:
    """Dimension of the eigenvalue-1 eigenspace, as trace of the Abel limit."""
    t = abel_limit(P).trace()
    assert t.denominator == 1
    return int(t)


@dataclass(frozen=True)
class SpectralProjection:
    source: RationalMatrix
    omega: RationalMatrix
    fixed_rank: int


def spectral_projection(P: RationalMatrix) -> SpectralProjection:
    omega = abel_limit(P)
    return SpectralProjection(source=P, omega=omega, fixed_rank=int(omega.trace()))


def charpoly(M: RationalMatrix):
    """Characteristic polynomial coefficients [1, c1, ..., cn] of det(xI - M).

    Faddeev-LeVerrier; exact.
    """
    if not M.is_square:
        raise ValueError("not square")
    n = M.rows
    coeffs = [Fraction(1)]
    Mk = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M * Mk
        c = -Mk.trace() / k
        coeffs.append(c)
        if k < n:
            Mk = Mk + RationalMatrix.diagonal([c] * n)
    return coeffs
