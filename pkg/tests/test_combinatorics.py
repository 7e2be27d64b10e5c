import itertools
import math
from fractions import Fraction

import pytest

from cs_neighborly.combinatorics import (
    INCONCLUSIVE,
    RULED_OUT,
    SEEDED_SHUFFLE,
    SetFamily,
    forbidden_count,
    greedy_family,
    in_scaled_polytope,
    interiors_disjoint,
    nonexistence_bound,
    translate_packing_check,
    translate_vector,
)
from cs_neighborly.core import max_neighborliness_primal
from cs_neighborly.errors import BadParams, PreconditionFailed
from cs_neighborly.lp import LpProblem, eq, lp_solve
from cs_neighborly.transform import cs_transform

from .conftest import primal_corpus

F = Fraction


def test_greedy_examples():
    assert len(greedy_family(4, 2).members) == 6
    assert greedy_family(6, 3).members == ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5))
    assert greedy_family(2, 1).members == ((0,), (1,))
    with pytest.raises(BadParams):
        greedy_family(3, 2)
    with pytest.raises(BadParams):
        greedy_family(4, 0)


def is_maximal(fam):
    members = set(fam.members)
    for A in itertools.combinations(range(fam.m), fam.s):
        if A in members:
            continue
        if all(2 * len(set(A) & set(B)) <= fam.s for B in fam.members):
            return False
    return True


@pytest.mark.parametrize("m,s", [(m, s) for m in range(2, 11) for s in range(1, m // 2 + 1)])
def test_greedy_bound_and_maximality(m, s):
    for fam in (greedy_family(m, s), greedy_family(m, s, SEEDED_SHUFFLE, seed=m * s)):
        assert fam.satisfies_bound()
        assert is_maximal(fam)
        assert len(fam.members) * (1 + forbidden_count(m, s)) >= math.comb(m, s)


def test_shuffle_is_seeded():
    a = greedy_family(12, 4, SEEDED_SHUFFLE, seed=3)
    assert a == greedy_family(12, 4, SEEDED_SHUFFLE, seed=3)
    assert a.satisfies_bound()


def test_large_ground_set_fallback():
    fam = greedy_family(66, 1)
    assert len(fam.members) == 66 and fam.satisfies_bound()


def test_forbidden_count_examples():
    assert forbidden_count(4, 2) == 1
    assert forbidden_count(6, 3) == 10
    assert all(forbidden_count(m, 1) == 1 for m in range(2, 30))


def brute_forbidden(m, s):
    A = set(range(s))
    return sum(1 for B in itertools.combinations(range(m), s) if 2 * len(A & set(B)) > s)


@pytest.mark.parametrize("m,s", [(m, s) for m in range(2, 12) for s in range(1, m // 2 + 1)])
def test_forbidden_count_brute_force(m, s):
    # the sum counts every B with |A∩B| > s/2, A itself included
    assert forbidden_count(m, s) == brute_forbidden(m, s)


def test_forbidden_count_analytic_estimate():
    for m in range(2, 31):
        for s in range(1, m // 2 + 1):
            assert forbidden_count(m, s) <= math.comb(m, s // 2) * 2**s


def test_nonexistence_examples():
    assert nonexistence_bound(2, 19, 1) == RULED_OUT
    assert nonexistence_bound(2, 18, 1) == INCONCLUSIVE
    assert nonexistence_bound(10, 11, 1) == INCONCLUSIVE
    with pytest.raises(BadParams):
        nonexistence_bound(2, 3, 2)


def test_packing_square(square):
    fam = SetFamily(2, 1, ((0,), (1,)))
    rep = translate_packing_check(square, 1, fam)
    assert rep.passed
    assert rep.summary() == "PASS: 1 pair disjoint, 2 translates ⊆ 3P"


def test_packing_cross_polytope(cross4):
    rep = translate_packing_check(cross4, 2, greedy_family(4, 2))
    assert rep.passed and rep.pairs_checked == 15 and rep.translates_checked == 6


def test_identical_translates_overlap(square):
    t = translate_vector(square, (0,), 1)
    assert not interiors_disjoint(square, t, t)


def test_packing_precondition(hexagon):
    with pytest.raises(PreconditionFailed):
        translate_packing_check(hexagon, 1, SetFamily(3, 1, ((0,), (1,), (2,))))
    with pytest.raises(PreconditionFailed):
        translate_packing_check(hexagon, 1, SetFamily(4, 1, ((0,),)), certified_k=2)


def l1_gauge(c, x):
    """min sum |c_i| subject to sum c_i v_i = x: the gauge of P at x."""
    m = c.m
    rows = []
    for r in range(c.dim):
        rows.append(eq([v[r] for v in c.vectors] + [-v[r] for v in c.vectors], x[r]))
    out = lp_solve(LpProblem(2 * m, tuple(rows), (1,) * (2 * m), "min", frozenset(range(2 * m))))
    return out.value


def interiors_disjoint_oracle(c, a, b):
    """P+a and P+b overlap in interior iff b-a lies in int(P - P) = int(2P)."""
    diff = [y - x for x, y in zip(a, b)]
    return l1_gauge(c, diff) >= 2


@pytest.mark.parametrize("c", primal_corpus(20, seed=12, d_values=(2, 3), m_max=5), ids=lambda c: f"d{c.dim}m{c.m}")
def test_disjointness_against_difference_body(c):
    for A, B in itertools.combinations(range(c.m), 2):
        a = translate_vector(c, (A,), 1)
        b = translate_vector(c, (B,), 1)
        assert interiors_disjoint(c, a, b) == interiors_disjoint_oracle(c, a, b)
        half_b = [x / 2 for x in b]
        assert interiors_disjoint(c, a, half_b) == interiors_disjoint_oracle(c, a, half_b)


@pytest.mark.parametrize("c", primal_corpus(40, seed=13, d_values=(2, 3, 4), m_max=7), ids=lambda c: f"d{c.dim}m{c.m}")
def test_packing_on_neighborly_corpus(c):
    k = max_neighborliness_primal(c).k_max
    for s in range(1, min(k // 2, c.m // 2) + 1):
        rep = translate_packing_check(c, s, greedy_family(c.m, s), certified_k=k)
        assert rep.passed, rep.summary()


@pytest.mark.parametrize("c", primal_corpus(60, seed=14, d_values=(2,), m_max=7), ids=lambda c: f"d{c.dim}m{c.m}")
def test_nonexistence_consistent_with_samples(c):
    if c.m >= 2 and nonexistence_bound(c.dim, c.m, 1) == RULED_OUT:
        assert max_neighborliness_primal(c, max_k=2).k_max < 2


def test_in_scaled_polytope_examples(square):
    assert in_scaled_polytope(square, (3, 0), 3)
    assert not in_scaled_polytope(square, (2, 2), 3)
    assert in_scaled_polytope(square, (F(3, 2), F(3, 2)), 3)


def test_cs_transform_of_packing_config_is_fine(cross4):
    # cross-polytopes have a 0-dimensional transform: no dominant sets at all
    assert cs_transform(cross4).dim == 0
