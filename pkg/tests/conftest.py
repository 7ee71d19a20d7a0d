import random

import pytest

from kernelwalk.cli import _period, _strongly_connected
from kernelwalk.semigroup import generate, kernel, rees_structure
from kernelwalk.transforms import Transformation
from kernelwalk.walkmeasure import walk_limit

SIX_WORDS = ("[451314]", "[245631]")
FOUR_WORDS = ("[4312]", "[3443]")
DOUBLY_WORDS = ("[2341]", "[2143]")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def _instance(words):
    colors = tuple(Transformation.parse(w) for w in words)
    S = generate(colors)
    ks = rees_structure(kernel(S))
    mu = walk_limit(S, structure=ks)
    return {"colors": colors, "S": S, "ks": ks, "mu": mu}


@pytest.fixture(scope="session")
def six_state():
    return _instance(SIX_WORDS)


@pytest.fixture(scope="session")
def four_state():
    return _instance(FOUR_WORDS)


@pytest.fixture(scope="session")
def doubly_stochastic():
    return _instance(DOUBLY_WORDS)


def random_colorings(count, seed=20260819, nmin=3, nmax=7):
    """Seeded strongly-connected aperiodic 2-out colorings."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(nmin, nmax)
        pair = tuple(Transformation(tuple(rng.randint(1, n) for _ in range(n)))
                     for _ in range(2))
        if not _strongly_connected(pair, n) or _period(pair, n) != 1:
            continue
        out.append(pair)
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_colorings(102)
