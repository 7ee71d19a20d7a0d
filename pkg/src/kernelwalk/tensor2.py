"""Tensor (Kronecker) powers of the walk: lifted averages and their limits.

Conventions: vec is row-major, pairing entry (i,j) of an n x n matrix with
position (i-1)n + j of a length-n^2 row; Mat inverts it.  For a row X and
a matrix A the two basic relations hold:

    Mat(X A^(x2))   = A^T Mat(X) A
    Mat(A^(x2) X^T) = A Mat(X) A^T
"""

from __future__ import annotations

from fractions import Fraction

from .ratlinalg import RationalMatrix, abel_limit
from .transforms import matrix_of
from .walkmeasure import LimitMeasure, normalize_weights


def kron(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    return RationalMatrix(
        [[a * b for a in arow for b in brow]
         for arow in A.data for brow in B.data])


def kron_power(A: RationalMatrix, level: int) -> RationalMatrix:
    if level < 1:
        raise ValueError("level must be >= 1")
    out = A
    for _ in range(level - 1):
        out = kron(out, A)
    return out


def vec_of(M: RationalMatrix) -> RationalMatrix:
    """Row-major flattening to a 1 x (rows*cols) row vector."""
    return RationalMatrix.row_vector([x for row in M.data for x in row])


def mat_of(v: RationalMatrix, n: int | None = None) -> RationalMatrix:
    """Inverse of vec_of for a 1 x n^2 row (or an n^2 x 1 column)."""
    flat = [x for row in v.data for x in row]
    if n is None:
        n = int(round(len(flat) ** 0.5))
    if n * n != len(flat):
        raise ValueError(f"length {len(flat)} is not a square")
    return RationalMatrix([flat[i * n:(i + 1) * n] for i in range(n)])


def a_tensor(generators, level: int, weights=None) -> RationalMatrix:
    """Weighted mean of the generators' tensor powers (not the power of the mean)."""
    weights = normalize_weights(len(generators), weights)
    gens = [kron_power(matrix_of(g), level) for g in generators]
    out = weights[0] * gens[0]
    for G, w in zip(gens[1:], weights[1:]):
        out = out + w * G
    return out


def omega_tensor(generators, level: int, weights=None) -> RationalMatrix:
    """Abel limit of the level-l lifted walk; equals the measure average of K^(xl)."""
    return abel_limit(a_tensor(generators, level, weights))


def omega_tensor_from_measure(measure: LimitMeasure, level: int) -> RationalMatrix:
    return measure.average(lambda k: kron_power(matrix_of(k), level))


def mat_right_action(X: RationalMatrix, A: RationalMatrix) -> RationalMatrix:
    """Mat(X A^(x2)) computed through the tensor square."""
    return mat_of(X * kron_power(A, 2))


def mat_left_action(X: RationalMatrix, A: RationalMatrix) -> RationalMatrix:
    """Mat(A^(x2) X^T) computed through the tensor square."""
    return mat_of((kron_power(A, 2) * X.T).T)


def basic_relations(X: RationalMatrix, A: RationalMatrix) -> dict:
    """Both sides of the two basic relations for a 1 x n^2 row X."""
    Xm = mat_of(X)
    return {
        "right": (mat_right_action(X, A), A.T * Xm * A),
        "left": (mat_left_action(X, A), A * Xm * A.T),
    }


def trace_identities(X: RationalMatrix, A: RationalMatrix) -> dict:
    """Both sides of X A^(x2) u^T = tr(Mat(X) A J A^T) and its transpose twin."""
    n = A.rows
    Xm = mat_of(X, n)
    u2 = RationalMatrix.ones(n * n, 1)
    J = RationalMatrix.ones(n)
    A2 = kron_power(A, 2)
    out = {
        "right": ((X * A2 * u2)[0, 0], (Xm * A * J * A.T).trace()),
        "left": ((RationalMatrix.ones(1, n * n) * A2 * X.T)[0, 0],
                 (Xm * A.T * J * A).trace()),
    }
    if A.is_stochastic():
        out["right_stochastic"] = (out["right"][0], (Xm * J).trace())
    return out


def descent_sides(omega_l: RationalMatrix, omega_lm1: RationalMatrix,
                  n: int, level: int) -> tuple:
    """Sides of Omega_l (J (x) I^(x(l-1))) = J (x) Omega_(l-1)."""
    J = RationalMatrix.ones(n)
    eye = RationalMatrix.identity(n ** (level - 1))
    return omega_l * kron(J, eye), kron(J, omega_lm1)


def fields_level2(omega2: RationalMatrix, n: int) -> tuple:
    """The level-2 row and column fields: vec(J) Omega_2 and Omega_2 vec(I)^T."""
    pi2 = vec_of(RationalMatrix.ones(n)) * omega2
    u2 = omega2 * vec_of(RationalMatrix.identity(n)).T
    return pi2, u2
