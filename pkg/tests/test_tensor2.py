import random
from fractions import Fraction as F

from kernelwalk.ratlinalg import RationalMatrix, abel_limit
from kernelwalk.tensor2 import (a_tensor, basic_relations, descent_sides,
                                fields_level2, kron, kron_power, mat_of,
                                omega_tensor, omega_tensor_from_measure,
                                trace_identities, vec_of)
from kernelwalk.transforms import matrix_of
from kernelwalk.walkmeasure import average_matrix


def _rand_matrix(rng, rows, cols, lo=-3, hi=3):
    return RationalMatrix([[F(rng.randint(lo, hi)) for _ in range(cols)]
                           for _ in range(rows)])


def test_vec_mat_round_trip():
    M = RationalMatrix([[1, 2], [3, 4]])
    v = vec_of(M)
    assert v == RationalMatrix([[1, 2, 3, 4]])
    assert mat_of(v) == M
    assert mat_of(v.T) == M


def test_kron_mixed_product():
    rng = random.Random(7)
    for _ in range(8):
        A = _rand_matrix(rng, 2, 2)
        B = _rand_matrix(rng, 3, 3)
        C = _rand_matrix(rng, 2, 2)
        D = _rand_matrix(rng, 3, 3)
        assert kron(A, B) * kron(C, D) == kron(A * C, B * D)
    A = _rand_matrix(rng, 2, 2)
    assert kron_power(A, 3) == kron(kron(A, A), A)


def test_basic_relations_random():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.randint(2, 4)
        A = _rand_matrix(rng, n, n)
        X = _rand_matrix(rng, 1, n * n)
        rel = basic_relations(X, A)
        assert rel["right"][0] == rel["right"][1]
        assert rel["left"][0] == rel["left"][1]


def test_trace_identities_random():
    rng = random.Random(17)
    for _ in range(15):
        n = rng.randint(2, 4)
        A = _rand_matrix(rng, n, n)
        X = _rand_matrix(rng, 1, n * n)
        out = trace_identities(X, A)
        assert out["right"][0] == out["right"][1]
        assert out["left"][0] == out["left"][1]
    # stochastic A collapses the right side to tr(Mat(X) J)
    for _ in range(8):
        n = rng.randint(2, 4)
        rows = []
        for _ in range(n):
            v = [F(rng.randint(0, 3)) for _ in range(n)]
            if not any(v):
                v[0] = F(1)
            s = sum(v)
            rows.append([x / s for x in v])
        A = RationalMatrix(rows)
        X = _rand_matrix(rng, 1, n * n)
        out = trace_identities(X, A)
        assert out["right_stochastic"][0] == out["right_stochastic"][1]


def test_average_of_powers_not_power_of_average(four_state):
    colors = four_state["colors"]
    A2 = a_tensor(colors, 2)
    assert A2 != kron_power(average_matrix(colors), 2)
    assert A2 == F(1, 2) * (kron_power(matrix_of(colors[0]), 2)
                            + kron_power(matrix_of(colors[1]), 2))


def test_omega_tensor_equals_measure_average(four_state, six_state):
    for inst, level in ((four_state, 2), (four_state, 3), (six_state, 2)):
        direct = omega_tensor(inst["colors"], level)
        via_mu = omega_tensor_from_measure(inst["mu"], level)
        assert direct == via_mu
        assert direct * direct == direct


def test_descent(four_state, six_state):
    for inst, level in ((six_state, 2), (four_state, 2), (four_state, 3)):
        n = inst["colors"][0].degree
        hi = omega_tensor(inst["colors"], level)
        lo = (omega_tensor(inst["colors"], level - 1) if level > 2
              else abel_limit(average_matrix(inst["colors"])))
        lhs, rhs = descent_sides(hi, lo, n, level)
        assert lhs == rhs


def test_fields_level2_fixed_points(four_state, six_state):
    for inst in (four_state, six_state):
        n = inst["colors"][0].degree
        A2 = a_tensor(inst["colors"], 2)
        O2 = omega_tensor(inst["colors"], 2)
        pi2, u2 = fields_level2(O2, n)
        assert pi2 * A2 == pi2
        assert A2 * u2 == u2
