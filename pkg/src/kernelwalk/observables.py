"""Limit observables of the walk and the identity web that ties them together.

M averages K^T J K (meeting counts), N averages K K^T (collision
indicators), Mtilde averages K^T Omega K.  All three are computable two
independent ways (measure average vs lifted spectral limit); construction
cross-checks them exactly.  omega denotes diag(pi) throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CrossCheckMismatch
from .ratlinalg import RationalMatrix, abel_limit, charpoly
from .semigroup import kernel_from_generators, minimal_rank, rees_structure
from .tensor2 import mat_of, omega_tensor, vec_of
from .transforms import (Transformation, apply_word, matrix_of, range_of,
                         range_state_vector)
from .walkmeasure import LimitMeasure, average_matrix, normalize_weights
from .zeon import delta_matrix, hat, omega_level


@dataclass(frozen=True)
class ObservableSet:
    n: int
    r: int
    tau: Fraction
    pi: tuple
    Omega: RationalMatrix
    omega: RationalMatrix          # diag(pi)
    M: RationalMatrix
    N: RationalMatrix
    Mtilde: RationalMatrix
    M0: RationalMatrix             # M - tau omega
    N0: RationalMatrix             # J - N
    Mtilde0: RationalMatrix        # Mtilde - (n/r) omega


def _assemble(n, r, Omega, M, N, Mtilde) -> ObservableSet:
    pi = tuple(sum(Omega[i, j] for i in range(n)) / n for j in range(n))
    omega = RationalMatrix.diagonal(pi)
    tau = M.trace()
    J = RationalMatrix.ones(n)
    return ObservableSet(n=n, r=r, tau=tau, pi=pi, Omega=Omega, omega=omega,
                         M=M, N=N, Mtilde=Mtilde,
                         M0=M - tau * omega, N0=J - N,
                         Mtilde0=Mtilde - Fraction(n, r) * omega)


def observables_from_measure(measure: LimitMeasure) -> ObservableSet:
    """Ground-truth route: average the kernel matrices under the limit measure."""
    ks = measure.structure
    n = ks.elements[0].degree
    J = RationalMatrix.ones(n)
    Omega = measure.mean_matrix()
    M = measure.average(lambda k: matrix_of(k).T * J * matrix_of(k))
    N = measure.average(lambda k: matrix_of(k) * matrix_of(k).T)
    Mtilde = measure.average(lambda k: matrix_of(k).T * Omega * matrix_of(k))
    return _assemble(n, ks.rank, Omega, M, N, Mtilde)


def observables_from_generators(generators, weights=None, rank=None) -> ObservableSet:
    """Spectral route: read the observables off the level-2 lifted limit.

    Needs no semigroup enumeration, so it scales to larger alphabets.
    """
    n = generators[0].degree
    if rank is None:
        rank = minimal_rank(generators)[0]
    Omega = abel_limit(average_matrix(generators, weights))
    O2 = omega_tensor(generators, 2, weights)
    M = mat_of(vec_of(RationalMatrix.ones(n)) * O2, n)
    N = mat_of((O2 * vec_of(RationalMatrix.identity(n)).T).T, n)
    Mtilde = mat_of(vec_of(Omega) * O2, n)
    return _assemble(n, rank, Omega, M, N, Mtilde)


def build_observables(measure: LimitMeasure, generators=None,
                      weights=None) -> ObservableSet:
    """Measure-average observables, cross-checked against the lifted limits.

    With generators given, M, N, Mtilde are recomputed through the tensor
    limit and M0, N0 through the level-2 subset limit; any disagreement
    raises CrossCheckMismatch.
    """
    obs = observables_from_measure(measure)
    if generators is not None:
        alt = observables_from_generators(generators, weights, rank=obs.r)
        for name in ("Omega", "M", "N", "Mtilde"):
            if getattr(alt, name) != getattr(obs, name):
                raise CrossCheckMismatch(f"{name}: measure and tensor routes differ")
        O2z = omega_level(generators, 2, weights)
        m2 = O2z.rows
        col_sums = RationalMatrix.row_vector(
            [sum(O2z[i, j] for i in range(m2)) for j in range(m2)])
        row_sums = RationalMatrix.row_vector(
            [sum(O2z[i, j] for j in range(m2)) for i in range(m2)])
        if hat(col_sums, obs.n) != obs.M0:
            raise CrossCheckMismatch("M0: measure and subset-lift routes differ")
        if hat(row_sums, obs.n) != obs.N0:
            raise CrossCheckMismatch("N0: measure and subset-lift routes differ")
    return obs


def split_probability(obs: ObservableSet, i: int, j: int) -> Fraction:
    """Limit probability that states i and j (1-based) land apart."""
    return 1 - obs.N[i - 1, j - 1]


def _first_mismatch(lhs: RationalMatrix, rhs: RationalMatrix):
    for i in range(lhs.rows):
        for j in range(lhs.cols):
            if lhs[i, j] != rhs[i, j]:
                return (i, j, str(lhs[i, j]), str(rhs[i, j]))
    return None


def identity_suite(obs: ObservableSet, measure: LimitMeasure | None = None,
                   zeon_omega2: RationalMatrix | None = None) -> dict:
    """Exercise the operator identities; report per-identity outcomes.

    Assumes a single recurrent class (all Omega rows equal).  Returns a
    report with the first failing entry for each broken identity and the
    characteristic polynomials of M, N, Mtilde, left uninterpreted.
    """
    n, r = obs.n, obs.r
    J = RationalMatrix.ones(n)
    u = RationalMatrix.ones(1, n)
    pi_row = RationalMatrix.row_vector(obs.pi)
    checks = []

    def add(name, lhs, rhs):
        if not isinstance(lhs, RationalMatrix):
            lhs = RationalMatrix([[lhs]])
            rhs = RationalMatrix([[rhs]])
        checks.append({"name": name, "ok": lhs == rhs,
                       "first_mismatch": _first_mismatch(lhs, rhs)})

    add("diag(N) = u", RationalMatrix.row_vector([obs.N[i, i] for i in range(n)]), u)
    add("diag(M) = tau pi",
        RationalMatrix.row_vector([obs.M[i, i] for i in range(n)]),
        obs.tau * pi_row)
    add("diag(Mtilde) = (n/r) pi",
        RationalMatrix.row_vector([obs.Mtilde[i, i] for i in range(n)]),
        Fraction(n, r) * pi_row)
    add("M = M^T", obs.M, obs.M.T)
    add("N = N^T", obs.N, obs.N.T)
    add("Mtilde = Mtilde^T", obs.Mtilde, obs.Mtilde.T)
    add("Omega N = (1/r) J", obs.Omega * obs.N, Fraction(1, r) * J)
    add("M Omega = n Omega^T Omega", obs.M * obs.Omega, n * obs.Omega.T * obs.Omega)
    add("J M = n^2 Omega", J * obs.M, n * n * obs.Omega)
    add("N Mtilde = (n/r) Omega", obs.N * obs.Mtilde, Fraction(n, r) * obs.Omega)
    add("N M Omega = (n^2/r) Omega", obs.N * obs.M * obs.Omega,
        Fraction(n * n, r) * obs.Omega)
    add("Omega N M = (n^2/r) Omega", obs.Omega * obs.N * obs.M,
        Fraction(n * n, r) * obs.Omega)
    add("Mtilde0 zero diagonal",
        RationalMatrix.row_vector([obs.Mtilde0[i, i] for i in range(n)]),
        RationalMatrix.zeros(1, n))
    add("Mtilde0 = Mtilde0^T", obs.Mtilde0, obs.Mtilde0.T)
    checks.append({"name": "Mtilde0 >= 0", "ok": obs.Mtilde0.is_nonnegative(),
                   "first_mismatch": None})

    doubly = tuple(x * n for x in obs.pi) == tuple([Fraction(1)] * n)
    if doubly:
        add("MN = (n/r) J", obs.M * obs.N, Fraction(n, r) * J)
        add("NM = (n/r) J", obs.N * obs.M, Fraction(n, r) * J)
        add("MN = NM", obs.M * obs.N, obs.N * obs.M)
        add("MJ = JM", obs.M * J, J * obs.M)
        add("NJ = JN", obs.N * J, J * obs.N)

    if measure is not None:
        rho = measure.average(
            lambda k: range_state_vector(k).T * range_state_vector(k))
        add("Mtilde = (n/r^2) <rho^T rho>", obs.Mtilde, Fraction(n, r * r) * rho)

    proportional = None
    if zeon_omega2 is not None and zeon_omega2.trace() == 1:
        base = next((obs.M0[i, j] for i in range(n) for j in range(n)
                     if obs.M0[i, j]), None)
        if base is not None:
            i0, j0 = next((i, j) for i in range(n) for j in range(n)
                          if obs.M0[i, j])
            c = obs.Mtilde0[i0, j0] / base
            proportional = obs.Mtilde0 == c * obs.M0
            checks.append({"name": "Mtilde0 proportional to M0",
                           "ok": proportional, "first_mismatch": None})

    return {
        "checks": checks,
        "all_ok": all(c["ok"] for c in checks),
        "doubly_stochastic": doubly,
        "charpoly": {"M": charpoly(obs.M), "N": charpoly(obs.N),
                     "Mtilde": charpoly(obs.Mtilde)},
    }


def level2_relation_table(obs: ObservableSet, omega2: RationalMatrix) -> list:
    """The six level-2 pairings of the tensor limit with vec(Omega), vec(I), vec(J)."""
    n = obs.n
    J = RationalMatrix.ones(n)
    rows = [
        ("Mat(vec(Omega) O2) = Mtilde",
         mat_of(vec_of(obs.Omega) * omega2, n), obs.Mtilde),
        ("Mat(O2 vec(Omega)^T) = Omega Omega^T",
         mat_of((omega2 * vec_of(obs.Omega).T).T, n), obs.Omega * obs.Omega.T),
        ("Mat(vec(I) O2) = n omega",
         mat_of(vec_of(RationalMatrix.identity(n)) * omega2, n), n * obs.omega),
        ("Mat(O2 vec(I)^T) = N",
         mat_of((omega2 * vec_of(RationalMatrix.identity(n)).T).T, n), obs.N),
        ("Mat(vec(J) O2) = M", mat_of(vec_of(J) * omega2, n), obs.M),
        ("Mat(O2 vec(J)^T) = J", mat_of((omega2 * vec_of(J).T).T, n), J),
    ]
    return [{"name": name, "ok": lhs == rhs,
             "first_mismatch": _first_mismatch(lhs, rhs)}
            for name, lhs, rhs in rows]


@dataclass(frozen=True)
class ProjectionSet:
    """alpha-weighted column projections P_j, beta-weighted row averages Q_i."""
    column: tuple
    row: tuple
    mean_idempotent: RationalMatrix


def projections(measure: LimitMeasure) -> ProjectionSet:
    ks = measure.structure
    col = [sum((measure.alpha[i] * matrix_of(ks.grid[i][j])
                for i in range(len(ks.partitions))),
               start=RationalMatrix.zeros(ks.elements[0].degree))
           for j in range(len(ks.ranges))]
    row = [sum((measure.beta[j] * matrix_of(ks.grid[i][j])
                for j in range(len(ks.ranges))),
               start=RationalMatrix.zeros(ks.elements[0].degree))
           for i in range(len(ks.partitions))]
    mean = sum((measure.alpha[i] * measure.beta[j] * matrix_of(ks.grid[i][j])
                for i in range(len(ks.partitions))
                for j in range(len(ks.ranges))),
               start=RationalMatrix.zeros(ks.elements[0].degree))
    return ProjectionSet(column=tuple(col), row=tuple(row), mean_idempotent=mean)


def _block_indicator(partition, n) -> RationalMatrix:
    same = [[Fraction(0)] * n for _ in range(n)]
    for block in partition:
        for a in block:
            for b in block:
                same[a - 1][b - 1] = Fraction(1)
    return RationalMatrix(same)


def projection_identities(ps: ProjectionSet, obs: ObservableSet,
                          measure: LimitMeasure) -> dict:
    """Named checks for the projection family."""
    ks = measure.structure
    n, r = obs.n, obs.r
    pi_row = RationalMatrix.row_vector(obs.pi)
    out = {}
    for j, P in enumerate(ps.column):
        rng = ks.ranges[j]
        rho_diag = RationalMatrix.diagonal(
            [Fraction(x in rng) for x in range(1, n + 1)])
        rho_row = RationalMatrix.row_vector(
            [Fraction(x in rng) for x in range(1, n + 1)])
        out[f"P_{j} idempotent"] = P * P == P
        out[f"P_{j} = N rho_{j}"] = P == obs.N * rho_diag
        out[f"pi P_{j} = (1/r) range row"] = pi_row * P == Fraction(1, r) * rho_row
    for i, Q in enumerate(ps.row):
        B = _block_indicator(ks.partitions[i], n)
        out[f"Q_{i} idempotent"] = Q * Q == Q
        out[f"Q_{i} = r B_{i} omega"] = Q == r * B * obs.omega
        out[f"Q_{i} Omega = Omega Q_{i}"] = Q * obs.Omega == obs.Omega * Q
        out[f"pi Q_{i} = pi"] = pi_row * Q == pi_row
    out["<E> = r N omega"] = ps.mean_idempotent == r * obs.N * obs.omega
    out["all_ok"] = all(v for k, v in out.items() if k != "all_ok")
    return out


def friedman_check(generators, weights=None, measure: LimitMeasure | None = None,
                   word_count: int = 12, word_length: int = 8,
                   seed: int = 0) -> dict:
    """Stationary-row laws over the kernel, plus sampled-word invariance.

    Core laws need only the generators (kernel comes from the ideal
    closure); the beta-decomposition laws additionally need the measure.
    """
    import random

    weights = normalize_weights(len(generators), weights)
    n = generators[0].degree
    Omega = abel_limit(average_matrix(generators, weights))
    pi_row = Fraction(1, n) * (RationalMatrix.ones(1, n) * Omega)
    K = kernel_from_generators(generators)
    ks = rees_structure(K)
    r = ks.rank
    obs = observables_from_generators(generators, weights, rank=r)
    u = RationalMatrix.ones(1, n)
    out = {}

    out["pi k = (1/r) range row, all kernel k"] = all(
        pi_row * matrix_of(k) == Fraction(1, r) * range_state_vector(k)
        for k in K)
    out["pi k k^T = (1/r) u, all kernel k"] = all(
        pi_row * matrix_of(k) * matrix_of(k).T == Fraction(1, r) * u for k in K)
    if len(generators) == 2:
        D = delta_matrix(generators)
        out["pi Delta k = 0, all kernel k"] = all(
            pi_row * D * matrix_of(k) == RationalMatrix.zeros(1, n) for k in K)

    rng = random.Random(seed)
    words = [tuple(rng.randrange(len(generators))
                   for _ in range(rng.randint(1, word_length)))
             for _ in range(word_count)]
    sample_k = [K[rng.randrange(len(K))] for _ in range(min(6, len(K)))]
    idems = [e for row in ks.grid for e in row]
    ok_wk = ok_we = ok_wee = ok_wN = True
    for w in words:
        Mw = matrix_of(apply_word(w, generators))
        for k in sample_k:
            ok_wk &= pi_row * Mw * matrix_of(k) == pi_row * matrix_of(k)
        for e in idems:
            Me = matrix_of(e)
            ok_we &= pi_row * Mw * Me == Fraction(1, r) * range_state_vector(e)
            ok_wee &= pi_row * Mw * Me * Me.T == Fraction(1, r) * u
        ok_wN &= pi_row * Mw * obs.N == Fraction(1, r) * u
    out["pi w k = pi k, sampled words"] = ok_wk
    out["pi w e = (1/r) range row, sampled words"] = ok_we
    out["pi w e e^T = (1/r) u, sampled words"] = ok_wee
    out["pi w N = (1/r) u, sampled words"] = ok_wN

    out["each block carries pi-mass 1/r"] = all(
        sum(pi_row[0, a - 1] for a in block) == Fraction(1, r)
        for P in ks.partitions for block in P)
    ok_cells = True
    for (i, j), cell in ks.cells.items():
        avg = sum((matrix_of(k) for k in cell),
                  start=RationalMatrix.zeros(n)) * Fraction(1, len(cell))
        expect = Fraction(1, r) * (RationalMatrix.ones(n, 1)
                                   * range_state_vector(ks.grid[i][j]))
        ok_cells &= avg == expect
    out["cell average = (1/r) ones x range row"] = ok_cells

    if measure is not None:
        beta = measure.beta
        acc = RationalMatrix.zeros(n)
        for j, rng_set in enumerate(ks.ranges):
            acc = acc + beta[j] * RationalMatrix.diagonal(
                [Fraction(x in rng_set) for x in range(1, n + 1)])
        out["omega = (1/r) sum beta rho"] = (
            RationalMatrix.diagonal(pi_row.data[0]) == Fraction(1, r) * acc)
        out["pi = (1/r) sum beta range rows"] = pi_row == Fraction(1, r) * (
            RationalMatrix.ones(1, n) * acc)
        out["Omega = (1/r) J sum beta rho"] = Omega == Fraction(1, r) * (
            RationalMatrix.ones(n) * acc)

    out["all_ok"] = all(v for k, v in out.items() if k != "all_ok")
    return out
