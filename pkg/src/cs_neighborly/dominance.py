"""Dominant subsets, exact neighborliness, and per-subspace norm ratios.

For a transform v̄_1..v̄_m in Q^n, an index set I is dominant when some
u != 0 puts at least half of sum_l |<v̄_l, u>| on I.  The primal polytope is
k-neighborly exactly when no k-subset is dominant, so the neighborliness is
one less than the smallest dominant size.

Two deciders are provided and must agree:

* ``dual-sign``: one LP per sign cell sigma (sigma_1 = +1), searching for u
  with sigma_l <v̄_l, u> >= 0, total 1, and at least 1/2 on I.
* ``dual-face``: I is dominant iff some signing of I fails the zonotope
  face test; the separating u comes from the gauge LP's dual solution.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    DUAL_FACE_SCAN,
    DUAL_SIGN_ENUM,
    TRANSFORM,
    CsConfiguration,
    NeighborlinessReport,
    SignedSubset,
    duplicate_warnings,
)
from .errors import BadS, EmptySubset, InvalidSubset, TooLarge
from .lp import Feasible, LpProblem, Vector, dot, eq, geq, lp_solve, nullspace_basis
from .transform import face_dual_gauge, transform_of, zonotope_gauge
from .errors import RankDeficient

SIGN_ENUM_MAX_M = 16
SUBSPACE_RATIO_MAX_M = 22
EXACT_DISTORTION_MAX_M = 14
CERTIFY_LP_BUDGET = 10**7

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DominanceCertificate:
    subset: tuple[int, ...]
    sigma: tuple[int, ...]
    u: Vector

    def check(self, t: CsConfiguration) -> bool:
        vals = [s * dot(v, self.u) for s, v in zip(self.sigma, t.vectors)]
        if len(vals) != t.m or any(x < 0 for x in vals):
            return False
        if sum(vals) != 1:
            return False
        return sum(vals[i] for i in self.subset) >= HALF


def _check_subset(t: CsConfiguration, I: Iterable[int]) -> tuple[int, ...]:
    I = tuple(sorted(set(int(i) for i in I)))
    if not I:
        raise EmptySubset("dominance needs a nonempty index set")
    if I[0] < 0 or I[-1] >= t.m:
        raise InvalidSubset(f"index out of range for m = {t.m}")
    return I


def _certificate_from_direction(t: CsConfiguration, I: tuple[int, ...], u: Sequence[Fraction]):
    x = [dot(v, u) for v in t.vectors]
    if x and x[0] < 0:
        u = [-a for a in u]
        x = [-a for a in x]
    total = sum(abs(a) for a in x)
    if total == 0:
        return None
    sigma = tuple(1 if a >= 0 else -1 for a in x)
    cert = DominanceCertificate(I, sigma, tuple(a / total for a in u))
    return cert if cert.check(t) else None


def _sign_cell_lp(t: CsConfiguration, sigma: Sequence[int], I: Sequence[int] | None) -> LpProblem:
    n = t.dim
    rows = []
    total = [Fraction(0)] * n
    part = [Fraction(0)] * n
    members = set(I or ())
    for l, (s, v) in enumerate(zip(sigma, t.vectors)):
        sv = [s * a for a in v]
        rows.append(geq(sv, 0))
        total = [a + b for a, b in zip(total, sv)]
        if l in members:
            part = [a + b for a, b in zip(part, sv)]
    rows.append(eq(total, 1))
    if I is not None:
        rows.append(geq(part, HALF))
    return LpProblem(n, tuple(rows))


@lru_cache(maxsize=64)
def nonempty_sign_cells(t: CsConfiguration) -> tuple[tuple[int, ...], ...]:
    """Sign patterns (first sign +1) whose cell contains some u != 0."""
    if t.m > SIGN_ENUM_MAX_M:
        raise TooLarge(f"sign-cell enumeration refuses m = {t.m} > {SIGN_ENUM_MAX_M}")
    cells = []
    for rest in itertools.product((1, -1), repeat=t.m - 1):
        sigma = (1,) + rest
        if isinstance(lp_solve(_sign_cell_lp(t, sigma, None)), Feasible):
            cells.append(sigma)
    return tuple(cells)


def _dominant_sign_enum(t, I):
    # the certificate system is infeasible on empty cells, so only the
    # nonempty ones (computed once per configuration) need an LP
    for sigma in nonempty_sign_cells(t):
        out = lp_solve(_sign_cell_lp(t, sigma, I))
        if isinstance(out, Feasible):
            return DominanceCertificate(I, sigma, out.witness)
    return None


def _dominant_face_scan(t, I):
    k = len(I)
    for rest in itertools.product((1, -1), repeat=k - 1):
        s = SignedSubset(I, (1,) + rest)
        g = face_dual_gauge(t, s)
        if not g.in_rel_interior:
            cert = _certificate_from_direction(t, I, g.dual)
            if cert is None:
                raise AssertionError("face test failed but no dominance certificate was recovered")
            return cert
    return None


def is_dominant(t: CsConfiguration, I: Iterable[int], method: str = DUAL_FACE_SCAN) -> Optional[DominanceCertificate]:
    """Certificate that I is dominant in the transform ``t``, or None."""
    t = transform_of(t)
    I = _check_subset(t, I)
    if t.dim == 0:
        return None
    if method == DUAL_FACE_SCAN:
        return _dominant_face_scan(t, I)
    if method == DUAL_SIGN_ENUM:
        if t.m > SIGN_ENUM_MAX_M:
            raise TooLarge(f"dual-sign refuses m = {t.m} > {SIGN_ENUM_MAX_M}")
        return _dominant_sign_enum(t, I)
    raise ValueError(f"unknown method {method!r}")


def lp_count(m: int, k: int, method: str) -> int:
    """Guard quantity for scanning all k-subsets."""
    if method == DUAL_SIGN_ENUM:
        return math.comb(m, k) * 2 ** (m - 1)
    return math.comb(m, k) * 2**k


def _search(t, method, max_size, force):
    if t.dim == 0:
        return None
    for k in range(1, max_size + 1):
        if not force and lp_count(t.m, k, method) > CERTIFY_LP_BUDGET:
            raise TooLarge(
                f"size {k} needs about {lp_count(t.m, k, method)} LPs (> {CERTIFY_LP_BUDGET}); use force"
            )
        for I in itertools.combinations(range(t.m), k):
            cert = is_dominant(t, I, method)
            if cert is not None:
                return k, cert
    return None


def min_dominant_size(t: CsConfiguration, method: str = DUAL_FACE_SCAN, force: bool = False) -> Optional[int]:
    """Smallest dominant size, or None when the transform has dimension 0."""
    t = transform_of(t)
    found = _search(t, method, t.m, force)
    return None if found is None else found[0]


def max_neighborliness(
    t: CsConfiguration, method: str = DUAL_FACE_SCAN, max_k: int | None = None, force: bool = False
) -> NeighborlinessReport:
    """Exact neighborliness via dominant subsets.

    With ``max_k`` the search stops after size ``max_k``; if nothing dominant
    turns up the report carries ``k_max = max_k`` and ``exact = False``.
    """
    primal_warn = duplicate_warnings(t) if t.role != TRANSFORM else ()
    t = transform_of(t)
    if t.dim == 0:
        return NeighborlinessReport(t.m, None, method, warnings=primal_warn)
    top = t.m if max_k is None else min(max_k, t.m)
    found = _search(t, method, top, force)
    if found is None:
        return NeighborlinessReport(top, None, method, exact=(top == t.m), warnings=primal_warn)
    k, cert = found
    return NeighborlinessReport(k - 1, k, method, witness=cert, warnings=primal_warn)


# ------------------------------------------------------------ norm ratios


def s_max_norm(x: Sequence, s: int):
    """Sum of the s largest absolute coordinates."""
    if not 1 <= s <= len(x):
        raise BadS(f"s = {s} outside 1..{len(x)}")
    return sum(sorted((abs(a) for a in x), reverse=True)[:s])


def _require_positive_dim(t):
    if t.dim < 1:
        raise ValueError("the subspace is {0}; ratios are undefined")


def cross_section_vertices(t: CsConfiguration) -> list[Vector]:
    """Vertices (up to sign) of L ∩ B_1^m, L the image of u -> (<v̄_l, u>)_l.

    A vertex has n - 1 independent vanishing coordinates, so each one is the
    image of the 1-dimensional solution space of some (n-1) x n system.
    """
    _require_positive_dim(t)
    n = t.dim
    seen = set()
    out = []
    for Z in itertools.combinations(range(t.m), n - 1):
        A = [t.vectors[l] for l in Z]
        try:
            N = nullspace_basis(tuple(zip(*A)) if A else ((),) * n, n - 1)
        except RankDeficient:
            continue
        if len(N[0]) != 1:
            continue
        u = [row[0] for row in N]
        x = [dot(v, u) for v in t.vectors]
        total = sum(abs(a) for a in x)
        if total == 0:
            continue
        lead = next(a for a in x if a != 0)
        sgn = 1 if lead > 0 else -1
        x = tuple(sgn * a / total for a in x)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def _ratio_gauge(t, s):
    best = Fraction(0)
    gens = t.vectors
    for S in itertools.combinations(range(t.m), s):
        for rest in itertools.product((1, -1), repeat=s - 1):
            signs = (1,) + rest
            p = [sum((sg * t.vectors[i][r] for i, sg in zip(S, signs)), Fraction(0)) for r in range(t.dim)]
            g = zonotope_gauge(gens, p)
            if g.gauge > best:
                best = g.gauge
    return best


def _ratio_cells(t, s):
    best = Fraction(0)
    for sigma in nonempty_sign_cells(t):
        for S in itertools.combinations(range(t.m), s):
            rows = _sign_cell_lp(t, sigma, None).constraints
            obj = [Fraction(0)] * t.dim
            for i in S:
                obj = [a + sigma[i] * b for a, b in zip(obj, t.vectors[i])]
            out = lp_solve(LpProblem(t.dim, rows, tuple(obj), "max"))
            if out.value > best:
                best = out.value
    return best


def _ratio_vertices(t, s):
    return max(s_max_norm(x, s) for x in cross_section_vertices(t))


def subspace_ratio(t: CsConfiguration, s: int, method: str = "gauge") -> Fraction:
    """sup over nonzero x in L of |||x|||_s / ||x||_1, exactly.

    ``gauge`` maximises, over s-subsets S and signings, the gauge of
    sum_S sign_i v̄_i in the zonotope of all v̄_l (LP duality turns each gauge
    into the sup of a signed partial sum over the l1 cross-section).
    ``cells`` is the sign-cell LP enumeration and ``vertices`` reads the
    maximum off the cross-section vertices; both serve as oracles.
    """
    t = transform_of(t)
    _require_positive_dim(t)
    if not 1 <= s <= t.m:
        raise BadS(f"s = {s} outside 1..{t.m}")
    if t.m > SUBSPACE_RATIO_MAX_M:
        raise TooLarge(f"subspace_ratio refuses m = {t.m} > {SUBSPACE_RATIO_MAX_M}")
    if method == "gauge":
        return _ratio_gauge(t, s)
    if method == "cells":
        return _ratio_cells(t, s)
    if method == "vertices":
        return _ratio_vertices(t, s)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class Distortion:
    """sup ||x||_2 / ||x||_1 over L; ``squared`` is exact when ``exact``."""

    value: float
    exact: bool
    squared: Optional[Fraction] = None
    samples: int = 0
    argmax: Optional[tuple] = None


def euclidean_l1_distortion(t: CsConfiguration, samples: int = 20000, seed: int = 0) -> Distortion:
    """Exact for m <= 14 (cross-section vertices); a seeded lower bound above that."""
    t = transform_of(t)
    _require_positive_dim(t)
    if t.m <= EXACT_DISTORTION_MAX_M:
        best, arg = Fraction(0), None
        for x in cross_section_vertices(t):
            sq = sum(a * a for a in x)
            if sq > best:
                best, arg = sq, x
        return Distortion(math.sqrt(best), True, best, 0, arg)
    return _sampled_distortion(t, samples, seed)


def _sampled_distortion(t, samples, seed):
    rng = np.random.default_rng(seed)
    B = np.array([[float(a) for a in v] for v in t.vectors])
    n = t.dim
    half = samples // 2
    U = rng.standard_normal((half, n))
    X = U @ B.T
    cand = [X]
    # directions with n-1 vanishing coordinates: the exact maximisers' shape
    for _ in range(samples - half):
        Z = rng.choice(t.m, size=n - 1, replace=False)
        A = B[Z]
        _, _, vt = np.linalg.svd(A) if n > 1 else (None, None, np.eye(1))
        cand.append((B @ vt[-1])[None, :])
    X = np.vstack(cand)
    l1 = np.abs(X).sum(axis=1)
    ok = l1 > 0
    r = np.sqrt((X[ok] ** 2).sum(axis=1)) / l1[ok]
    i = int(np.argmax(r))
    return Distortion(float(r[i]), False, None, samples, tuple(X[ok][i] / l1[ok][i]))
