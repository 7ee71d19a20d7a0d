from fractions import Fraction as F

import pytest

from kernelwalk.errors import CrossCheckMismatch
from kernelwalk.observables import (build_observables, friedman_check,
                                    identity_suite, level2_relation_table,
                                    observables_from_generators,
                                    observables_from_measure,
                                    projection_identities, projections,
                                    split_probability)
from kernelwalk.ratlinalg import RationalMatrix
from kernelwalk.tensor2 import omega_tensor
from kernelwalk.zeon import omega_level


def test_frozen_oracles_six_state(six_state):
    obs = build_observables(six_state["mu"], six_state["colors"])
    assert obs.n == 6 and obs.r == 3
    assert obs.tau == 12
    assert obs.pi == (F(2, 9), F(1, 9), F(5, 27), F(2, 9), F(4, 27), F(1, 9))
    assert obs.omega == RationalMatrix.diagonal(obs.pi)
    assert obs.M.trace() == obs.tau
    assert obs.N0 == RationalMatrix.ones(6) - obs.N


def test_frozen_oracles_four_state(four_state):
    obs = build_observables(four_state["mu"], four_state["colors"])
    assert obs.tau == 8
    assert obs.pi == (F(1, 6), F(1, 6), F(1, 3), F(1, 3))
    third, two3 = F(1, 3), F(2, 3)
    assert obs.N == RationalMatrix([[1, 0, third, two3],
                                    [0, 1, two3, third],
                                    [third, two3, 1, 0],
                                    [two3, third, 0, 1]])
    assert split_probability(obs, 1, 2) == 1
    assert split_probability(obs, 1, 3) == F(2, 3)
    assert split_probability(obs, 1, 1) == 0


def test_routes_agree(six_state, four_state, doubly_stochastic):
    for inst in (six_state, four_state, doubly_stochastic):
        a = observables_from_measure(inst["mu"])
        b = observables_from_generators(inst["colors"])
        for name in ("n", "r", "tau", "pi"):
            assert getattr(a, name) == getattr(b, name)
        for name in ("Omega", "omega", "M", "N", "Mtilde", "M0", "N0", "Mtilde0"):
            assert getattr(a, name) == getattr(b, name)


def test_identity_suite(six_state, four_state, doubly_stochastic):
    for inst in (six_state, four_state, doubly_stochastic):
        obs = build_observables(inst["mu"], inst["colors"])
        O2z = omega_level(inst["colors"], 2)
        rep = identity_suite(obs, measure=inst["mu"], zeon_omega2=O2z)
        assert rep["all_ok"], [c["name"] for c in rep["checks"] if not c["ok"]]
        names = {c["name"] for c in rep["checks"]}
        assert "Mtilde = (n/r^2) <rho^T rho>" in names
        # proportionality is gated on the level-2 subset limit having trace 1
        assert ("Mtilde0 proportional to M0" in names) == (O2z.trace() == 1)
    obs = build_observables(doubly_stochastic["mu"], doubly_stochastic["colors"])
    rep = identity_suite(obs)
    assert rep["doubly_stochastic"]
    assert {c["name"] for c in rep["checks"]} >= {"MN = (n/r) J", "NM = (n/r) J"}


def test_mtilde_diagonal_scale(six_state):
    # n/r = 2 here while r = 3: the diagonal carries (n/r) pi, not r pi
    obs = observables_from_measure(six_state["mu"])
    diag = tuple(obs.Mtilde[i, i] for i in range(6))
    assert diag == tuple(F(2) * p for p in obs.pi)
    assert diag != tuple(F(3) * p for p in obs.pi)


def test_charpoly_reporting(four_state):
    obs = observables_from_measure(four_state["mu"])
    rep = identity_suite(obs)
    for key in ("M", "N", "Mtilde"):
        cs = rep["charpoly"][key]
        assert len(cs) == 5 and cs[0] == 1


def test_level2_table(six_state, four_state):
    for inst in (six_state, four_state):
        obs = observables_from_measure(inst["mu"])
        O2 = omega_tensor(inst["colors"], 2)
        table = level2_relation_table(obs, O2)
        assert len(table) == 6
        assert all(row["ok"] for row in table), [r["name"] for r in table
                                                 if not r["ok"]]


def test_projections(six_state, four_state, doubly_stochastic):
    for inst in (six_state, four_state, doubly_stochastic):
        ps = projections(inst["mu"])
        obs = observables_from_measure(inst["mu"])
        assert len(ps.column) == len(inst["ks"].ranges)
        assert len(ps.row) == len(inst["ks"].partitions)
        rep = projection_identities(ps, obs, inst["mu"])
        assert rep["all_ok"], [k for k, v in rep.items() if not v]


def test_cross_check_rejects_foreign_generators(four_state):
    wrong = (four_state["colors"][0], four_state["colors"][0])
    with pytest.raises(CrossCheckMismatch):
        build_observables(four_state["mu"], wrong)


def test_friedman(six_state, four_state):
    for inst in (six_state, four_state):
        rep = friedman_check(inst["colors"], measure=inst["mu"])
        assert rep["all_ok"], [k for k, v in rep.items() if not v]
        assert "omega = (1/r) sum beta rho" in rep
    rep = friedman_check(six_state["colors"])
    assert rep["all_ok"]
    assert "omega = (1/r) sum beta rho" not in rep
