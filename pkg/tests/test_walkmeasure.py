from fractions import Fraction as F

import pytest

from kernelwalk.ratlinalg import abel_limit
from kernelwalk.semigroup import generate
from kernelwalk.transforms import Transformation
from kernelwalk.walkmeasure import (average_matrix, convolve, haar_check,
                                    normalize_weights, walk_limit)


def test_normalize_weights():
    assert normalize_weights(2) == (F(1, 2), F(1, 2))
    assert normalize_weights(2, ("1/3", "2/3")) == (F(1, 3), F(2, 3))
    with pytest.raises(ValueError):
        normalize_weights(2, (F(1, 2),))
    with pytest.raises(ValueError):
        normalize_weights(2, (F(1), F(0)))
    with pytest.raises(ValueError):
        normalize_weights(2, (F(1, 2), F(1, 3)))


def test_marginals_six_state(six_state):
    mu = six_state["mu"]
    assert mu.alpha == (F(1, 3), F(2, 3))
    assert mu.beta == (F(4, 9), F(2, 9), F(1, 9), F(2, 9))
    assert mu.group_order == 6
    assert sum(mu.lam.values()) == 1
    rep = haar_check(mu)
    assert rep["product_form"] and rep["total_mass"] == 1
    assert not rep["deviations"]


def test_marginals_four_state(four_state):
    mu = four_state["mu"]
    assert mu.alpha == (F(1, 3), F(2, 3))
    assert mu.beta == (F(1, 3), F(2, 3))
    assert haar_check(mu)["product_form"]


def test_mean_matrix_is_abel_limit(four_state, six_state):
    for inst in (four_state, six_state):
        A = average_matrix(inst["colors"])
        assert inst["mu"].mean_matrix() == abel_limit(A)


def test_limit_measure_is_convolution_idempotent(four_state):
    lam = four_state["mu"].lam
    assert convolve(lam, lam) == lam
    # stationary under the one-step measure (not under single generators)
    step = {g: F(1, 2) for g in four_state["colors"]}
    assert convolve(step, lam) == lam
    assert convolve(lam, step) == lam
    g = four_state["colors"][0]
    assert convolve({g: F(1)}, lam) != lam


def test_single_permutation_uniform_on_cyclic_group():
    g = Transformation.parse("[2341]")
    S = generate([g])
    mu = walk_limit(S)
    assert len(mu.lam) == 4
    assert set(mu.lam.values()) == {F(1, 4)}
    assert mu.group_order == 4 and mu.alpha == (F(1),) and mu.beta == (F(1),)


def test_nonuniform_weights_keep_product_form(six_state):
    S = six_state["S"]
    mu = walk_limit(S, weights=("1/3", "2/3"), structure=six_state["ks"])
    rep = haar_check(mu)
    assert rep["product_form"] and rep["total_mass"] == 1
    assert mu.alpha != six_state["mu"].alpha or mu.beta != six_state["mu"].beta


def test_average_on_scalar_weighting(four_state):
    mu = four_state["mu"]
    from kernelwalk.transforms import matrix_of, range_diag
    lhs = mu.average(range_diag)
    rhs = sum((w * range_diag(k) for k, w in mu.lam.items()),
              start=0 * matrix_of(four_state["colors"][0]))
    assert lhs == rhs
