"""Limit measure of the generator random walk, and its product structure.

The walk multiplies i.i.d. generators on the right; its Cesaro limit
measure lives on the kernel and factors as (row marginal) x Haar x
(column marginal) over the grid coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SupportLeak
from .ratlinalg import RationalMatrix, abel_limit
from .semigroup import KernelStructure, Semigroup, kernel, rees_structure
from .transforms import compose, matrix_of


def normalize_weights(count, weights=None):
    """Default uniform 1/d; otherwise validate positivity and total mass."""
    if weights is None:
        return tuple(Fraction(1, count) for _ in range(count))
    weights = tuple(Fraction(w) for w in weights)
    if len(weights) != count:
        raise ValueError(f"{len(weights)} weights for {count} generators")
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        raise ValueError("weights must be positive and sum to 1")
    return weights


def average_matrix(generators, weights=None) -> RationalMatrix:
    """Weighted mean of the generator matrices; the walk's one-step average."""
    weights = normalize_weights(len(generators), weights)
    n = generators[0].degree
    A = RationalMatrix.zeros(n)
    for g, w in zip(generators, weights):
        A = A + w * matrix_of(g)
    return A


@dataclass(frozen=True)
class LimitMeasure:
    """Cesaro limit of the walk: weights lam over kernel elements.

    alpha is the partition (row) marginal, beta the range (column)
    marginal, in the grid order of `structure`; within each cell the
    measure is Haar, lam(k) = alpha_i beta_j / |G|.
    """

    lam: dict = field(compare=False)
    alpha: tuple = ()
    beta: tuple = ()
    group_order: int = 0
    structure: KernelStructure = None

    def __call__(self, k):
        return self.lam.get(k, Fraction(0))

    def mean_matrix(self) -> RationalMatrix:
        """Sum of lam(k) M(k): the limit of the averaged walk matrices."""
        return self.average(matrix_of)

    def average(self, matrix_fn) -> RationalMatrix:
        """lam-average of matrix_fn(k) over the kernel."""
        it = iter(self.lam.items())
        k0, w0 = next(it)
        out = w0 * matrix_fn(k0)
        for k, w in it:
            out = out + w * matrix_fn(k)
        return out


def walk_limit(S: Semigroup, weights=None,
               structure: KernelStructure | None = None) -> LimitMeasure:
    """Limit measure of the right-multiplication walk on S.

    Computed exactly as the Abel limit of the |S| x |S| chain seeded by the
    generator weights.  Raises SupportLeak if any limit mass sits outside
    the kernel (it never should; the check guards the chain construction).
    """
    weights = normalize_weights(len(S.generators), weights)
    idx = {f: i for i, f in enumerate(S.elements)}
    m = len(S.elements)
    rows = [[Fraction(0)] * m for _ in range(m)]
    for f, i in idx.items():
        for g, w in zip(S.generators, weights):
            rows[i][idx[compose(f, g)]] += w
    omega_chain = abel_limit(RationalMatrix(rows))
    seed = [Fraction(0)] * m
    for g, w in zip(S.generators, weights):
        seed[idx[g]] += w
    nu = RationalMatrix.row_vector(seed) * omega_chain
    lam = {f: nu[0, i] for f, i in idx.items() if nu[0, i]}
    if structure is None:
        structure = rees_structure(kernel(S))
    kset = set(structure.elements)
    if any(k not in kset for k in lam):
        raise SupportLeak("limit mass outside the kernel")
    alpha = [Fraction(0)] * len(structure.partitions)
    beta = [Fraction(0)] * len(structure.ranges)
    for k, w in lam.items():
        i, j = structure.cell_of(k)
        alpha[i] += w
        beta[j] += w
    return LimitMeasure(lam=lam, alpha=tuple(alpha), beta=tuple(beta),
                        group_order=structure.group_order, structure=structure)


def haar_check(measure: LimitMeasure) -> dict:
    """Verify the product form lam(k) = alpha_i beta_j / |G| on every element.

    Returns a small report; raises SupportLeak only for missing mass.
    """
    ks = measure.structure
    total = sum(measure.lam.values())
    deviations = []
    for k in ks.elements:
        i, j = ks.cell_of(k)
        expect = measure.alpha[i] * measure.beta[j] / ks.group_order
        if measure(k) != expect:
            deviations.append((k, measure(k), expect))
    return {
        "total_mass": total,
        "product_form": not deviations,
        "deviations": deviations,
        "alpha": measure.alpha,
        "beta": measure.beta,
        "group_order": ks.group_order,
    }


def convolve(lam1: dict, lam2: dict) -> dict:
    """Convolution of two measures on transformations."""
    out = {}
    for f, wf in lam1.items():
        for g, wg in lam2.items():
            fg = compose(f, g)
            out[fg] = out.get(fg, Fraction(0)) + wf * wg
    return {k: w for k, w in out.items() if w}
