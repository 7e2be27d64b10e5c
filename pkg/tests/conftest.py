import random
from functools import lru_cache

import pytest

from cs_neighborly.constructions import sample_rational_primal
from cs_neighborly.core import CsConfiguration


def config(rows, role="primal", dim=None):
    return CsConfiguration.from_rows(rows, role, dim)


@pytest.fixture
def hexagon():
    return config([[1, 0], [0, 1], [1, 1]])


@pytest.fixture
def square():
    return config([[1, 0], [0, 1]])


@pytest.fixture
def cross4():
    return config([[int(i == j) for j in range(4)] for i in range(4)])


@pytest.fixture
def hexagon_transform():
    return config([[1], [1], [-1]], "transform")


@lru_cache(maxsize=None)
def primal_corpus(count, seed=0, d_values=(2, 3, 4), m_max=7, include_square=True):
    """Seeded random rational primal configurations, m from d to m_max."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        d = rng.choice(d_values)
        lo = d if include_square else d + 1
        m = rng.randint(lo, m_max)
        out.append(sample_rational_primal(d, m, seed * 100003 + k))
    return tuple(out)


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, msg = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key:>2}: {msg}")


@lru_cache(maxsize=None)
def balanced_primal_corpus(count, seed=0):
    """Primal configurations whose 1-dim transform has nearly equal weights.

    No pair carries half of the total weight, so these tend to be
    2-neighborly with m > d, unlike the small-integer corpus above.
    """
    from cs_neighborly.transform import inverse_transform

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.choice((3, 4, 5))
        t = CsConfiguration(1, [[rng.choice((1, -1)) * rng.randint(4, 6)] for _ in range(d + 1)], "transform")
        out.append(inverse_transform(t))
    return tuple(out)
