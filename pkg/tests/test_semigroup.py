import random

import pytest

from kernelwalk.errors import IndexOutOfRange, StructureViolation
from kernelwalk.semigroup import (element_order, generate, kernel,
                                  kernel_from_generators, local_group_table,
                                  minimal_rank, order_profile,
                                  rees_coordinates, rees_product,
                                  rees_structure, sandwich, sandwich_table)
from kernelwalk.transforms import (Transformation, apply_word, compose,
                                   kernel_partition_of, range_of, rank_of)
from conftest import random_colorings


def test_six_state_structure(six_state):
    S, ks = six_state["S"], six_state["ks"]
    assert len(S) == 68
    assert len(ks.elements) == 48
    assert ks.rank == 3
    assert ks.partitions == (((1, 2), (3, 5), (4, 6)), ((1, 6), (2, 4), (3, 5)))
    assert ks.ranges == ((1, 3, 4), (1, 4, 5), (2, 3, 6), (2, 5, 6))
    assert ks.group_order == 6
    assert order_profile(ks) == {1: 1, 2: 3, 3: 2}
    want = [["[1 1 3 4 3 4]", "[1 1 5 4 5 4]", "[2 2 3 6 3 6]", "[2 2 5 6 5 6]"],
            ["[1 4 3 4 3 1]", "[1 4 5 4 5 1]", "[6 2 3 2 3 6]", "[6 2 5 2 5 6]"]]
    got = [[str(e) for e in row] for row in ks.grid]
    assert got == want


def test_four_state_structure(four_state):
    S, ks = four_state["S"], four_state["ks"]
    assert len(S) == 12
    assert len(ks.elements) == 8
    assert ks.rank == 2
    assert len(ks.partitions) == 2 and len(ks.ranges) == 2
    assert ks.group_order == 2


def test_grid_zero_laws(six_state):
    # same range: left zero (e1 e2 = e1); same partition: right zero.
    ks = six_state["ks"]
    for j in range(len(ks.ranges)):
        for i1 in range(len(ks.partitions)):
            for i2 in range(len(ks.partitions)):
                assert compose(ks.grid[i1][j], ks.grid[i2][j]) == ks.grid[i1][j]
    for i in range(len(ks.partitions)):
        for j1 in range(len(ks.ranges)):
            for j2 in range(len(ks.ranges)):
                assert compose(ks.grid[i][j1], ks.grid[i][j2]) == ks.grid[i][j2]


def test_kernel_is_minimal_ideal(four_state):
    S = four_state["S"]
    K = kernel(S)
    r = min(rank_of(f) for f in S.elements)
    assert all(rank_of(k) == r for k in K)
    ks = set(K)
    for k in K:
        for f in S.elements:
            assert compose(k, f) in ks and compose(f, k) in ks


def test_kernel_from_generators_matches(six_state, four_state):
    for inst in (six_state, four_state):
        S = inst["S"]
        assert kernel_from_generators(S.generators) == kernel(S)
    for colors in random_colorings(8, seed=11):
        S = generate(colors)
        assert kernel_from_generators(colors) == kernel(S)


def test_minimal_rank_witness(six_state):
    gens = six_state["S"].generators
    r, word = minimal_rank(gens)
    assert r == 3
    assert rank_of(apply_word(word, gens)) == 3


def test_rees_coordinates_bijective(four_state):
    ks = four_state["ks"]
    seen = set()
    for k in ks.elements:
        i, g, j = rees_coordinates(ks, k)
        assert g in ks.group_elements
        seen.add((i, g, j))
    assert len(seen) == len(ks.elements)


def test_rees_product_law(four_state, six_state):
    ks = four_state["ks"]
    coords = {k: rees_coordinates(ks, k) for k in ks.elements}
    for a in ks.elements:
        for b in ks.elements:
            got = rees_product(ks, coords[a], coords[b])
            assert got == coords[compose(a, b)]
    ks = six_state["ks"]
    rng = random.Random(2)
    picks = rng.sample(ks.elements, 12)
    for a in picks:
        for b in picks:
            got = rees_product(ks, rees_coordinates(ks, a),
                               rees_coordinates(ks, b))
            assert got == rees_coordinates(ks, compose(a, b))


def test_sandwich_values(six_state):
    ks = six_state["ks"]
    G = set(ks.group_elements)
    table = sandwich_table(ks)
    assert len(table) == len(ks.ranges)
    for j in range(len(ks.ranges)):
        for i in range(len(ks.partitions)):
            assert table[j][i] == sandwich(ks, j, i)
            assert table[j][i] in G
    with pytest.raises(IndexOutOfRange):
        sandwich(ks, 5, 0)


def test_local_groups(six_state):
    ks = six_state["ks"]
    for i in range(len(ks.partitions)):
        for j in range(len(ks.ranges)):
            table = local_group_table(ks, i, j)
            assert len(table) == ks.group_order
            assert order_profile(ks, i, j) == {1: 1, 2: 3, 3: 2}
    e = ks.base
    assert element_order(e, e) == 1
    orders = sorted(element_order(g, e) for g in ks.group_elements)
    assert orders == [1, 2, 2, 2, 3, 3]


def test_structure_violation_on_doctored_kernel(four_state):
    K = four_state["ks"].elements
    with pytest.raises(StructureViolation):
        rees_structure(K[:-1])
    ident = Transformation.parse("[1234]")
    with pytest.raises(StructureViolation):
        rees_structure(K + (ident,))


def test_cell_of_matches_invariants(six_state):
    ks = six_state["ks"]
    for k in ks.elements:
        i, j = ks.cell_of(k)
        assert ks.partitions[i] == kernel_partition_of(k)
        assert ks.ranges[j] == range_of(k)
        assert k in ks.cells[(i, j)]


def test_base_idempotent_identities(six_state):
    # rho(e) e = rho(e), e rho(e)^T = ones; kernel elements permute their range
    from kernelwalk.ratlinalg import RationalMatrix
    from kernelwalk.transforms import matrix_of, range_state_vector
    ks = six_state["ks"]
    e = ks.base
    E = matrix_of(e)
    rho = range_state_vector(e)
    ones = RationalMatrix.ones(6, 1)
    assert rho * E == rho
    assert E * rho.T == ones
    for k in ks.elements:
        K = matrix_of(k)
        rk = range_state_vector(k)
        assert rk * K == rk
