"""Random transform configurations and their distortion measurements.

Floating point is confined to sampling; every sample is rationalised before
it reaches the exact certifier, so the certified object is the rational
configuration itself.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from .core import PRIMAL, TRANSFORM, CsConfiguration
from .dominance import euclidean_l1_distortion
from .errors import DegenerateAfterRetries
from .lp import Matrix, mat_mul, rank, transpose

DEFAULT_PRECISION = 2**32
ORTHO_PRECISION = 2**16
MAX_RETRIES = 16

EXACT = "exact"
SAMPLED = "sampled-lower-bound"


def rationalize(x: float, precision: int) -> Fraction:
    return Fraction(round(float(x) * precision), precision)


def sample_gaussian_configuration(m: int, n: int, seed: int, precision: int = DEFAULT_PRECISION) -> CsConfiguration:
    """m i.i.d. standard Gaussian vectors in Q^n, rounded to multiples of 1/precision."""
    if not 1 <= n < m:
        raise ValueError(f"need 1 <= n < m, got m = {m}, n = {n}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        G = rng.standard_normal((m, n))
        rows = tuple(tuple(rationalize(x, precision) for x in row) for row in G)
        if rank(rows) == n:
            return CsConfiguration(n, rows, TRANSFORM)
    raise DegenerateAfterRetries(f"no rank-{n} sample in {MAX_RETRIES} tries")


def sample_rational_primal(d: int, m: int, seed: int, max_num: int = 4, max_den: int = 3) -> CsConfiguration:
    """Small random rational primal configuration; degenerate inputs are kept.

    Entries are p/q with |p| <= max_num and 1 <= q <= max_den, so
    duplicates, collinear triples and non-vertices all show up.
    """
    rng = random.Random(seed)
    while True:
        rows = [
            [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(d)]
            for _ in range(m)
        ]
        if any(all(x == 0 for x in r) for r in rows):
            continue
        if rank(rows) == d:
            return CsConfiguration(d, rows, PRIMAL)


def _solve(A: Matrix, B: Matrix) -> Matrix:
    """Exact A^{-1} B by Gauss-Jordan."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def haar_orthogonal_float(d: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    return Q * np.sign(np.diag(R))


def random_orthogonal(d: int, seed: int, precision: int = ORTHO_PRECISION) -> Matrix:
    """Rational matrix with U^T U = I exactly, close to a Haar sample.

    The float QR sample Q is pulled back through the Cayley map
    A = (I - Q)(I + Q)^{-1} (after a column flip when det Q = -1), the skew
    matrix A is rounded, and U = (I - A)(I + A)^{-1} is formed exactly.
    """
    if d < 1:
        raise ValueError("d must be positive")
    Q = haar_orthogonal_float(d, seed)
    flip = np.linalg.det(Q) < 0
    if flip:
        Q = Q.copy()
        Q[:, 0] = -Q[:, 0]
    I = np.eye(d)
    A = (I - Q) @ np.linalg.inv(I + Q)
    Ar = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            a = rationalize((A[i, j] - A[j, i]) / 2, precision)
            Ar[i][j] = a
            Ar[j][i] = -a
    Ie = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    IpA = tuple(tuple(Ie[i][j] + Ar[i][j] for j in range(d)) for i in range(d))
    ImA = tuple(tuple(Ie[i][j] - Ar[i][j] for j in range(d)) for i in range(d))
    # (I - A)(I + A)^{-1} = (I + A)^{-1}(I - A) since the factors commute
    U = [list(r) for r in _solve(IpA, ImA)]
    if flip:
        for row in U:
            row[0] = -row[0]
    return tuple(tuple(r) for r in U)


def is_orthogonal(U: Matrix) -> bool:
    d = len(U)
    P = mat_mul(transpose(U), U)
    return all(P[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d))


def kashin_configuration(d: int, seed: int, precision: int = ORTHO_PRECISION) -> CsConfiguration:
    """The 2d vectors e_1..e_d, Ue_1..Ue_d in Q^d for a random orthogonal U."""
    U = random_orthogonal(d, seed, precision)
    eye = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    cols = transpose(U)
    return CsConfiguration(d, tuple(map(tuple, eye)) + cols, TRANSFORM)


# --------------------------------------------------------------- volume ratio


@dataclass(frozen=True)
class VolumeRatio:
    """R(d) and its universal bound sqrt(2e/pi).

    For even d, R^d = rational_part / pi^(d/2) with ``rational_part`` exact.
    """

    d: int
    value: mpmath.mpf
    bound: mpmath.mpf
    rational_part: Optional[Fraction] = None

    def __float__(self) -> float:
        return float(self.value)


def volume_ratio(d: int, dps: int = 40) -> VolumeRatio:
    if d < 1:
        raise ValueError("d must be positive")
    with mpmath.workdps(dps):
        D = mpmath.mpf(d)
        log_rd = (
            D * mpmath.log(2)
            + D / 2 * mpmath.log(D)
            + mpmath.loggamma(D / 2 + 1)
            - mpmath.loggamma(D + 1)
            - D / 2 * mpmath.log(mpmath.pi)
        )
        value = mpmath.exp(log_rd / D)
        bound = mpmath.sqrt(2 * mpmath.e / mpmath.pi)
    rational = None
    if d % 2 == 0:
        h = d // 2
        rational = Fraction(2**d * d**h * math.factorial(h), math.factorial(d))
    return VolumeRatio(d, value, bound, rational)


# ------------------------------------------------------------- distortions


@dataclass(frozen=True)
class DistortionReport:
    value: float
    mode: str
    samples: int
    implied_constant: float
    squared: Optional[Fraction] = None


def rate_factor(m: int, d: int) -> float:
    """sqrt((1 + ln(m/d)) / d); the only place the log base is fixed."""
    return math.sqrt((1 + math.log(m / d)) / d)


def gg_margin(t: CsConfiguration, d: int | None = None, samples: int = 20000, seed: int = 0) -> DistortionReport:
    """Distortion of the subspace of ``t`` divided by the optimal rate factor."""
    if t.role != TRANSFORM:
        raise ValueError("gg_margin expects a transform configuration")
    if d is None:
        d = t.m - t.dim
    if d < 1:
        raise ValueError("primal dimension must be positive")
    dist = euclidean_l1_distortion(t, samples, seed)
    mode = EXACT if dist.exact else SAMPLED
    return DistortionReport(dist.value, mode, dist.samples, dist.value / rate_factor(t.m, d), dist.squared)


def kashin_margin(U: Sequence[Sequence], sample_count: int, seed: int) -> DistortionReport:
    """Worst sampled ||x||_2 sqrt(d) / (4 R^2 (||U^T x||_1 + ||x||_1)).

    Values <= 1 are consistent with the Kashin-type inequality holding for U.
    """
    Uf = np.array([[float(a) for a in row] for row in U])
    d = Uf.shape[0]
    R2 = float(volume_ratio(d).value) ** 2
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((sample_count, d))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    denom = 4 * R2 * (np.abs(X @ Uf).sum(axis=1) + np.abs(X).sum(axis=1))
    ratios = math.sqrt(d) / denom
    worst = float(ratios.max())
    return DistortionReport(worst, SAMPLED, sample_count, worst)
