"""Bounded-intersection set families and the translate-packing argument.

A 2s-neighborly cs polytope P admits, for every family F of s-subsets with
pairwise intersections at most s/2, translates P + (2/s) sum_{i in A} v_i
(A in F) with pairwise disjoint interiors, all inside 3P.  Comparing volumes
gives |F| <= 3^d, and a greedy family is large, which bounds m.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import CsConfiguration
from .errors import BadParams, PreconditionFailed
from .lp import Feasible, LpProblem, eq, geq, leq, lp_solve

LEX = "lex"
SEEDED_SHUFFLE = "shuffle"


@dataclass(frozen=True)
class SetFamily:
    m: int
    s: int
    members: tuple[tuple[int, ...], ...]

    def max_pairwise_intersection(self) -> int:
        sets = [set(a) for a in self.members]
        return max((len(a & b) for a, b in itertools.combinations(sets, 2)), default=0)

    def satisfies_bound(self) -> bool:
        return all(len(a) == self.s for a in self.members) and 2 * self.max_pairwise_intersection() <= self.s


def _check_params(m: int, s: int) -> None:
    if not (1 <= s and 2 * s <= m):
        raise BadParams(f"need 1 <= s <= m/2, got m = {m}, s = {s}")


def greedy_family(m: int, s: int, order: str = LEX, seed: int = 0) -> SetFamily:
    """Scan all s-subsets of range(m), keeping each that meets every kept set in <= s/2 points."""
    _check_params(m, s)
    cands = list(itertools.combinations(range(m), s))
    if order == SEEDED_SHUFFLE:
        random.Random(seed).shuffle(cands)
    elif order != LEX:
        raise BadParams(f"unknown order {order!r}")
    limit = s // 2
    if m > 64:
        return _greedy_python(m, s, cands, limit)
    kept = []
    cap = 64
    buf = np.zeros(cap, dtype=np.uint64)
    for A in cands:
        mask = 0
        for i in A:
            mask |= 1 << i
        if kept:
            inter = np.bitwise_count(buf[: len(kept)] & np.uint64(mask))
            if inter.max() > limit:
                continue
        if len(kept) == cap:
            cap *= 2
            buf = np.concatenate([buf, np.zeros(cap - len(kept), dtype=np.uint64)])
        buf[len(kept)] = mask
        kept.append(A)
    fam = SetFamily(m, s, tuple(kept))
    assert fam.satisfies_bound()
    return fam


def _greedy_python(m, s, cands, limit):
    kept, masks = [], []
    for A in cands:
        mask = sum(1 << i for i in A)
        if all((mask & b).bit_count() <= limit for b in masks):
            kept.append(A)
            masks.append(mask)
    return SetFamily(m, s, tuple(kept))


def forbidden_count(m: int, s: int) -> int:
    """Number of s-subsets meeting a fixed s-subset in more than s/2 points."""
    _check_params(m, s)
    lo, hi = s // 2, -(-s // 2)
    return sum(math.comb(s, lo + k) * math.comb(m - s, hi - k) for k in range(1, hi + 1))


RULED_OUT = "RuledOut"
INCONCLUSIVE = "Inconclusive"


def nonexistence_bound(d: int, m: int, s: int) -> str:
    """RuledOut means no 2s-neighborly cs d-polytope with 2m vertices exists.

    A greedy family has at least C(m,s) / (1 + forbidden) members and at most
    3^d of them fit; the comparison is done in integers.
    """
    _check_params(m, s)
    if d < 1:
        raise BadParams("d must be positive")
    if math.comb(m, s) > 3**d * (1 + forbidden_count(m, s)):
        return RULED_OUT
    return INCONCLUSIVE


# ------------------------------------------------------------------ packing


@dataclass
class PackingReport:
    pairs_checked: int = 0
    translates_checked: int = 0
    overlapping_pairs: list = field(default_factory=list)
    escaping_translates: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.overlapping_pairs and not self.escaping_translates

    def summary(self) -> str:
        if self.passed:
            p = "pair" if self.pairs_checked == 1 else "pairs"
            return (
                f"PASS: {self.pairs_checked} {p} disjoint, "
                f"{self.translates_checked} translates ⊆ 3P"
            )
        return (
            f"FAIL: {len(self.overlapping_pairs)} overlapping pairs, "
            f"{len(self.escaping_translates)} translates escaping 3P"
        )


def translate_vector(c: CsConfiguration, A: Sequence[int], s: int) -> tuple[Fraction, ...]:
    t = [Fraction(0)] * c.dim
    for i in A:
        t = [a + b for a, b in zip(t, c.vectors[i])]
    return tuple(Fraction(2, s) * a for a in t)


def interiors_disjoint(c: CsConfiguration, shift_a, shift_b) -> bool:
    """Do P + shift_a and P + shift_b have disjoint interiors?

    Looks for a weakly separating hyperplane <a, x> <= b <= <a, y>, with
    <a, shift_b - shift_a> = 1 as normalisation (it rules out a = 0 and is
    always attainable since P is full-dimensional).
    """
    d = c.dim
    diff = [y - x for x, y in zip(shift_a, shift_b)]
    rows = []
    for _, _, w in c.signed_vectors():
        xa = [p + q for p, q in zip(w, shift_a)]
        xb = [p + q for p, q in zip(w, shift_b)]
        rows.append(leq(xa + [-1], 0))
        rows.append(geq(xb + [-1], 0))
    rows.append(eq(diff + [0], 1))
    return isinstance(lp_solve(LpProblem(d + 1, tuple(rows))), Feasible)


def in_scaled_polytope(c: CsConfiguration, x: Sequence[Fraction], scale: int | Fraction) -> bool:
    """Is x in scale * conv{+-v_i}?  (x = sum c_i v_i with sum |c_i| <= scale.)"""
    m, d = c.m, c.dim
    nv = 2 * m
    rows = []
    for r in range(d):
        coeffs = [v[r] for v in c.vectors] + [-v[r] for v in c.vectors]
        rows.append(eq(coeffs, x[r]))
    rows.append(leq([1] * nv, scale))
    return isinstance(lp_solve(LpProblem(nv, tuple(rows), nonneg=frozenset(range(nv)))), Feasible)


def translate_packing_check(
    c: CsConfiguration, s: int, fam: SetFamily, certified_k: int | None = None
) -> PackingReport:
    """Verify the packing for family ``fam``; needs 2s-neighborliness.

    ``certified_k`` may pass in an already certified neighborliness; otherwise
    it is computed with the dominance certifier.
    """
    if fam.m != c.m or fam.s != s:
        raise PreconditionFailed("family parameters do not match the configuration")
    if certified_k is None:
        from .dominance import max_neighborliness

        certified_k = max_neighborliness(c, max_k=2 * s).k_max
    if certified_k < 2 * s:
        raise PreconditionFailed(f"configuration is only {certified_k}-neighborly, need {2 * s}")
    rep = PackingReport()
    shifts = [translate_vector(c, A, s) for A in fam.members]
    for (ia, sa), (ib, sb) in itertools.combinations(enumerate(shifts), 2):
        rep.pairs_checked += 1
        if not interiors_disjoint(c, sa, sb):
            rep.overlapping_pairs.append((fam.members[ia], fam.members[ib]))
    for A, sh in zip(fam.members, shifts):
        rep.translates_checked += 1
        for _, _, w in c.signed_vectors():
            if not in_scaled_polytope(c, [p + q for p, q in zip(w, sh)], 3):
                rep.escaping_translates.append(A)
                break
    return rep
