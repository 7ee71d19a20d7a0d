"""Permanent-based subset powers: the nilpotent-variable lift of the walk.

Level l replaces states by l-element subsets; the lift of a matrix W has
entries per(W[I,J]).  On function matrices the lift is multiplicative, and
the level-l limit vanishes exactly when l exceeds the kernel rank, which
turns the lift into a rank detector.  Level 2 carries a symmetric-matrix
calculus through the hat correspondence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import (NotStochastic, NotSymmetricZeroDiag, SizeCap,
                     TwoColorOnly, ZeroTopLevel)
from .ratlinalg import RationalMatrix, abel_limit
from .transforms import matrix_of
from .walkmeasure import LimitMeasure, average_matrix, normalize_weights

PERMANENT_CAP = 12


def permanent(M: RationalMatrix, cap: int = PERMANENT_CAP) -> Fraction:
    """Permanent by Ryser's formula; refuses orders above cap."""
    if not M.is_square:
        raise ValueError("not square")
    n = M.rows
    if n > cap:
        raise SizeCap(f"permanent of order {n} exceeds cap {cap}")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for mask in range(1, 1 << n):
        prod = Fraction((-1) ** (n - mask.bit_count()))
        for row in M.data:
            s = sum(x for j, x in enumerate(row) if mask >> j & 1)
            if not s:
                prod = Fraction(0)
                break
            prod *= s
        total += prod
    return total


class SubsetIndex:
    """l-element subsets of {1..n} as sorted tuples, in lexicographic order."""

    def __init__(self, n: int, level: int):
        if not 1 <= level <= n:
            raise ValueError(f"level {level} outside 1..{n}")
        self.n = n
        self.level = level
        self.subsets = tuple(combinations(range(1, n + 1), level))
        self.position = {s: i for i, s in enumerate(self.subsets)}

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __getitem__(self, i):
        return self.subsets[i]


def zeon_power(W: RationalMatrix, level: int, cap: int = PERMANENT_CAP) -> RationalMatrix:
    """Subset lift: entry (I,J) is per(W[I,J]).

    Rows with at most one nonzero entry admit a direct product formula, so
    function matrices avoid the permanent entirely.
    """
    if not W.is_square:
        raise ValueError("not square")
    n = W.rows
    idx = SubsetIndex(n, level)
    m = len(idx)
    simple = all(sum(1 for x in row if x) <= 1 for row in W.data)
    out = [[Fraction(0)] * m for _ in range(m)]
    if simple:
        hit = [next(((j + 1, x) for j, x in enumerate(row) if x), None)
               for row in W.data]
        for a, I in enumerate(idx):
            cols = [hit[i - 1] for i in I]
            if None in cols:
                continue
            J = tuple(sorted(c for c, _ in cols))
            if len(set(J)) < level:
                continue
            val = Fraction(1)
            for _, x in cols:
                val *= x
            out[a][idx.position[J]] = val
        return RationalMatrix(out)
    for a, I in enumerate(idx):
        block = [W.data[i - 1] for i in I]
        for b, J in enumerate(idx):
            sub = RationalMatrix([[row[j - 1] for j in J] for row in block])
            out[a][b] = permanent(sub, cap)
    return RationalMatrix(out)


def a_level(generators, level: int, weights=None) -> RationalMatrix:
    """Weighted mean of the generators' subset lifts; substochastic."""
    weights = normalize_weights(len(generators), weights)
    lifts = [zeon_power(matrix_of(g), level) for g in generators]
    out = weights[0] * lifts[0]
    for L, w in zip(lifts[1:], weights[1:]):
        out = out + w * L
    return out


def omega_level(generators, level: int, weights=None) -> RationalMatrix:
    """Abel limit of the level-l lifted walk."""
    return abel_limit(a_level(generators, level, weights))


def omega_level_from_measure(measure: LimitMeasure, level: int) -> RationalMatrix:
    return measure.average(lambda k: zeon_power(matrix_of(k), level))


def kernel_rank_zeon(generators, weights=None, level_cap=None):
    """Kernel rank as the last level whose lifted limit is nonzero.

    The limits vanish exactly above the rank, so the scan stops at the
    first zero.  Returns None when every level up to the cap is nonzero
    and the cap is below n (the rank then exceeds the cap).
    """
    n = generators[0].degree
    cap = n if level_cap is None else min(level_cap, n)
    zero_seen = None
    for level in range(1, cap + 1):
        O = omega_level(generators, level, weights)
        if all(x == 0 for row in O.data for x in row):
            zero_seen = level
            break
    if zero_seen is not None:
        return zero_seen - 1
    return n if cap == n else None


def hat(X: RationalMatrix, n: int | None = None) -> RationalMatrix:
    """Pair-indexed row -> symmetric zero-diagonal n x n matrix."""
    flat = [x for row in X.data for x in row]
    if n is None:
        n = next(k for k in range(2, 2 * len(flat) + 3)
                 if k * (k - 1) == 2 * len(flat))
    idx = SubsetIndex(n, 2)
    if len(idx) != len(flat):
        raise ValueError(f"{len(flat)} entries is not C({n},2)")
    H = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), x in zip(idx, flat):
        H[a - 1][b - 1] = H[b - 1][a - 1] = x
    return RationalMatrix(H)


def unhat(M: RationalMatrix) -> RationalMatrix:
    """Symmetric zero-diagonal matrix -> pair-indexed row; validates shape."""
    n = M.rows
    if not M.is_square or M != M.T or any(M[i, i] for i in range(n)):
        raise NotSymmetricZeroDiag("need a symmetric matrix with zero diagonal")
    return RationalMatrix.row_vector([M[a - 1, b - 1]
                                      for a, b in SubsetIndex(n, 2)])


def pair_sum(X: RationalMatrix) -> Fraction:
    """X u^T over pairs; equals tr(hat(X) J) / 2."""
    return sum(x for row in X.data for x in row)


def zeon_basic_relations(X: RationalMatrix, A: RationalMatrix) -> dict:
    """Level-2 analogue of the basic relations, with the diagonal defects.

    hat(X A^(v2)) = A^T hat(X) A - D_plus and hat(A^(v2) X^T) = A hat(X) A^T
    - D_minus; the defects are diagonal, given in closed form, and carry
    the whole trace of the symmetric side.
    """
    n = A.rows
    Xh = hat(X, n)
    idx = SubsetIndex(n, 2)
    flat = [x for row in X.data for x in row]
    A2 = zeon_power(A, 2)
    right_sym = A.T * Xh * A
    left_sym = A * Xh * A.T
    dplus = [2 * sum(x * A[a - 1, i] * A[b - 1, i]
                     for (a, b), x in zip(idx, flat)) for i in range(n)]
    dminus = [2 * sum(x * A[i, a - 1] * A[i, b - 1]
                      for (a, b), x in zip(idx, flat)) for i in range(n)]
    return {
        "right": (hat(X * A2, n), right_sym - RationalMatrix.diagonal(dplus)),
        "left": (hat((A2 * X.T).T, n), left_sym - RationalMatrix.diagonal(dminus)),
        "d_plus": RationalMatrix.diagonal(dplus),
        "d_minus": RationalMatrix.diagonal(dminus),
        "right_sym": right_sym,
        "left_sym": left_sym,
    }


def zeon_trace_identities(X: RationalMatrix, A: RationalMatrix) -> dict:
    """Both sides of X A^(v2) u^T = tr(hat(X) A (J-I) A^T)/2 and its twin."""
    n = A.rows
    Xh = hat(X, n)
    A2 = zeon_power(A, 2)
    J = RationalMatrix.ones(n)
    eye = RationalMatrix.identity(n)
    out = {
        "right": (pair_sum(X * A2), (Xh * A * (J - eye) * A.T).trace() / 2),
        "left": (pair_sum((A2 * X.T).T), (Xh * A.T * (J - eye) * A).trace() / 2),
    }
    if A.is_stochastic():
        out["right_stochastic"] = (out["right"][0],
                                   (Xh * (J - A * A.T)).trace() / 2)
    return out


def integration_by_parts(X: RationalMatrix, A: RationalMatrix) -> tuple:
    """Sides of X (I - A^(v2)) u^T = tr(A^T hat(X) A) / 2 for stochastic A."""
    if not A.is_stochastic():
        raise NotStochastic("identity holds for stochastic matrices")
    lhs = pair_sum(X) - pair_sum(X * zeon_power(A, 2))
    rhs = (A.T * hat(X, A.rows) * A).trace() / 2
    return lhs, rhs


def _two_colors(generators):
    if len(generators) != 2:
        raise TwoColorOnly(f"need exactly 2 colors, got {len(generators)}")
    return matrix_of(generators[0]), matrix_of(generators[1])


def delta_matrix(generators) -> RationalMatrix:
    """Half-difference of the two color matrices."""
    R, B = _two_colors(generators)
    return Fraction(1, 2) * (R - B)


def f_map(Y: RationalMatrix, generators) -> RationalMatrix:
    """F(Y) = (R Y R^T + B Y B^T)/2 = A Y A^T + Delta Y Delta^T."""
    R, B = _two_colors(generators)
    return Fraction(1, 2) * (R * Y * R.T + B * Y * B.T)


def g_map(Y: RationalMatrix, generators) -> RationalMatrix:
    """G(Y) = (R^T Y R + B^T Y B)/2, the adjoint of F."""
    R, B = _two_colors(generators)
    return Fraction(1, 2) * (R.T * Y * R + B.T * Y * B)


def a2_pair(generators) -> RationalMatrix:
    """Level-2 lifted mean (R^(v2) + B^(v2))/2 for two colors."""
    if len(generators) != 2:
        raise TwoColorOnly(f"need exactly 2 colors, got {len(generators)}")
    return a_level(generators, 2)


def polarization_sides(generators) -> tuple:
    """A2 versus A^(v2) + Delta^(v2); equal for two colors."""
    A = average_matrix(generators)
    return a2_pair(generators), zeon_power(A, 2) + zeon_power(delta_matrix(generators), 2)


def fixed_point_report(X: RationalMatrix, generators) -> dict:
    """The four fixed-point conditions tied by the correspondence theorem.

    F(hat X) = hat X always matches A2 X^T = X^T; for nonnegative X,
    G(hat X) = hat X matches X A2 = X.
    """
    n = generators[0].degree
    Xh = hat(X, n)
    A2 = a2_pair(generators)
    return {
        "f_fixed": f_map(Xh, generators) == Xh,
        "column_fixed": A2 * X.T == X.T,
        "g_fixed": g_map(Xh, generators) == Xh,
        "row_fixed": X * A2 == X,
        "nonnegative": all(x >= 0 for row in X.data for x in row),
    }


def marginal_descent(generators, weights=None, rank=None) -> dict:
    """Descend the top-level marginal fields down to level 1.

    pi_l(I) sums pi_{l+1} over the supersets of I; u_l(I) sums
    pi-weighted u_{l+1} over one-point extensions of I.  Both stay fixed
    points of the lifted walk at every level; at level 1 they land on a
    multiple of the stationary row and a constant column.
    """
    weights = normalize_weights(len(generators), weights)
    n = generators[0].degree
    if rank is None:
        rank = kernel_rank_zeon(generators, weights)
    top = omega_level(generators, rank, weights)
    if all(x == 0 for row in top.data for x in row):
        raise ZeroTopLevel(f"level-{rank} limit vanishes; nothing to descend")
    omega1 = abel_limit(average_matrix(generators, weights))
    pi = [sum(omega1[i, j] for i in range(n)) / n for j in range(n)]
    idx = SubsetIndex(n, rank)
    m = len(idx)
    pi_l = {I: sum(top[i, j] for i in range(m)) for j, I in enumerate(idx)}
    u_l = {I: sum(top[i, j] for j in range(m)) for i, I in enumerate(idx)}
    pi_levels = {rank: pi_l}
    u_levels = {rank: u_l}
    for level in range(rank - 1, 0, -1):
        sub = SubsetIndex(n, level)
        pi_l = {I: sum(v for J, v in pi_levels[level + 1].items()
                       if set(I) <= set(J)) for I in sub}
        u_l = {I: sum(pi[i - 1] * u_levels[level + 1][tuple(sorted(set(I) | {i}))]
                      for i in range(1, n + 1) if i not in I) for I in sub}
        pi_levels[level] = pi_l
        u_levels[level] = u_l
    return {
        "rank": rank,
        "pi": tuple(pi),
        "pi_levels": pi_levels,
        "u_levels": u_levels,
        "pi_bottom": tuple(pi_levels[1][(i,)] for i in range(1, n + 1)),
        "u_bottom": tuple(u_levels[1][(i,)] for i in range(1, n + 1)),
    }
