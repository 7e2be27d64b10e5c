"""The cs transform and face criteria read off on the transform side.

``cs_transform`` realises the transform as the rows of the canonical basis of
``{lam : sum_i lam_i v_i = 0}``.  Faces of the primal polytope then become
relative-interior conditions on zonotopes spanned by transform vectors, which
are decided by the min-max-coefficient ("gauge") LP below; the 2^m sign-sum
vertices of those zonotopes are never listed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import PRIMAL, TRANSFORM, CsConfiguration, SignedSubset
from .lp import Infeasible, LpProblem, Vector, eq, leq, lp_solve, nullspace_basis, to_matrix

NOT_IN_SPAN = "not-in-span"
IN_REL_INTERIOR = "rel-interior"
ON_BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class GaugeResult:
    """Gauge of a point w.r.t. the zonotope sum_l [-g_l, g_l].

    ``dual`` is a direction u with <u, p> = gauge and sum_l |<u, g_l>| <= 1
    (the optimal LP dual).  For NOT_IN_SPAN it is instead a direction
    orthogonal to every generator with <u, p> > 0.
    """

    status: str
    gauge: Optional[Fraction] = None
    dual: Optional[Vector] = None

    @property
    def in_rel_interior(self) -> bool:
        return self.status == IN_REL_INTERIOR


def cs_transform(c: CsConfiguration) -> CsConfiguration:
    if c.role != PRIMAL:
        raise ValueError("cs_transform expects a primal configuration")
    B = nullspace_basis(c.vectors, c.dim)
    return CsConfiguration(c.m - c.dim, B, TRANSFORM)


def inverse_transform(t: CsConfiguration) -> CsConfiguration:
    """Primal configuration whose transform is ``t`` up to linear isomorphism."""
    if t.role != TRANSFORM:
        raise ValueError("inverse_transform expects a transform configuration")
    M = nullspace_basis(t.vectors, t.dim)
    return CsConfiguration(t.m - t.dim, M, PRIMAL)


def transform_of(c: CsConfiguration) -> CsConfiguration:
    """Transform side of ``c`` whatever its role."""
    return c if c.role == TRANSFORM else cs_transform(c)


def primal_of(c: CsConfiguration) -> CsConfiguration:
    return c if c.role == PRIMAL else inverse_transform(c)


def zonotope_gauge(generators: Sequence[Sequence], p: Sequence) -> GaugeResult:
    """Classify ``p`` against the zonotope generated by ``generators``.

    Solves  min t  s.t.  sum_l c_l g_l = p,  |c_l| <= t  with c_l = c+_l - c-_l,
    which is infeasible exactly when p is outside the span.
    """
    gens = to_matrix(generators)
    p = to_matrix([p])[0]
    n = len(p)
    q = len(gens)
    nv = 2 * q + 1  # c+_1..c+_q, c-_1..c-_q, t
    rows = []
    for r in range(n):
        coeffs = [g[r] for g in gens] + [-g[r] for g in gens] + [0]
        rows.append(eq(coeffs, p[r]))
    for l in range(q):
        coeffs = [0] * nv
        coeffs[l] = 1
        coeffs[q + l] = 1
        coeffs[-1] = -1
        rows.append(leq(coeffs, 0))
    obj = [0] * (2 * q) + [1]
    out = lp_solve(LpProblem(nv, tuple(rows), tuple(obj), "min", frozenset(range(nv))))
    if isinstance(out, Infeasible):
        # y^T G = 0 on the equality rows and y^T p < 0: u = -y separates
        u = tuple(-y for y in out.farkas[:n])
        return GaugeResult(NOT_IN_SPAN, None, u)
    t = out.value
    u = tuple(-z for z in out.duals[:n])
    if t < 1:
        status = IN_REL_INTERIOR
    elif t == 1:
        status = ON_BOUNDARY
    else:
        status = OUTSIDE
    return GaugeResult(status, t, u)


def is_valid_vertex_transform(t: CsConfiguration) -> Optional[int]:
    """Check that every +-v_i is a vertex of the primal polytope.

    Returns None when valid, otherwise the first failing index (0-based).
    Each v̄_i must lie in the interior of the zonotope of the other vectors,
    which in particular needs those to span Q^n.
    """
    for i in range(t.m):
        others = [v for l, v in enumerate(t.vectors) if l != i]
        g = zonotope_gauge(others, t.vectors[i])
        if not g.in_rel_interior:
            return i
    return None


def face_dual_point(t: CsConfiguration, s: SignedSubset) -> tuple[Vector, list]:
    members = set(s.indices)
    p = [Fraction(0)] * t.dim
    for i, sign in s.items():
        for r, x in enumerate(t.vectors[i]):
            p[r] += sign * x
    others = [v for l, v in enumerate(t.vectors) if l not in members]
    return tuple(p), others


def face_dual_gauge(t: CsConfiguration, s: SignedSubset) -> GaugeResult:
    s.check_within(t.m)
    p, others = face_dual_point(t, s)
    return zonotope_gauge(others, p)


def is_face_dual(t: CsConfiguration, s: SignedSubset) -> bool:
    """Does {sign_i v_i : i in s} span a face of the primal polytope?"""
    return face_dual_gauge(t, s).in_rel_interior
