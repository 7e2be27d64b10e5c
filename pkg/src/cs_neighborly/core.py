"""Centrally symmetric configurations and primal-side face tests.

A configuration stores the half set ``v_1..v_m``; the polytope is
``conv{+-v_1, ..., +-v_m}``.  Indices are 0-based throughout the Python API.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional

from .errors import InvalidSubset
from .lp import Feasible, LpProblem, Matrix, Vector, eq, geq, leq, lp_solve, rank, to_matrix

PRIMAL = "primal"
TRANSFORM = "transform"

# NeighborlinessReport.method values
DUAL_SIGN_ENUM = "dual-sign"
DUAL_FACE_SCAN = "dual-face"
PRIMAL_ORACLE = "primal"


@dataclass(frozen=True)
class CsConfiguration:
    """m vectors spanning Q^dim, tagged as a primal half set or a transform.

    Zero vectors are rejected on the primal side only: a transform may
    legitimately contain zeros (the image of a primal vector outside the
    span of the others, or a coordinate subspace).
    """

    dim: int
    vectors: Matrix
    role: str = PRIMAL

    def __post_init__(self):
        object.__setattr__(self, "vectors", to_matrix(self.vectors))
        if self.role not in (PRIMAL, TRANSFORM):
            raise ValueError(f"unknown role {self.role!r}")
        if self.dim < 0:
            raise ValueError("negative dimension")
        for v in self.vectors:
            if len(v) != self.dim:
                raise ValueError(f"vector {v} does not have length {self.dim}")
        if len(self.vectors) < self.dim:
            raise ValueError("fewer vectors than the dimension")
        if self.role == PRIMAL and self.dim > 0:
            if any(all(x == 0 for x in v) for v in self.vectors):
                raise ValueError("zero vector in a primal configuration")
        if rank(self.vectors) != self.dim:
            from .errors import RankDeficient

            raise RankDeficient("vectors do not span the ambient space")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], role: str = PRIMAL, dim: int | None = None):
        rows = to_matrix(rows)
        if dim is None:
            dim = len(rows[0]) if rows else 0
        return cls(dim, rows, role)

    @property
    def m(self) -> int:
        return len(self.vectors)

    def signed(self, i: int, sign: int) -> Vector:
        v = self.vectors[i]
        return v if sign > 0 else tuple(-x for x in v)

    def signed_vectors(self) -> Iterator[tuple[int, int, Vector]]:
        for i in range(self.m):
            for sign in (1, -1):
                yield i, sign, self.signed(i, sign)

    def duplicate_pairs(self) -> list[tuple[int, int]]:
        """Index pairs with v_i = +-v_j; then the 2m points are not distinct."""
        out = []
        for i, j in itertools.combinations(range(self.m), 2):
            vi, vj = self.vectors[i], self.vectors[j]
            if vi == vj or vi == tuple(-x for x in vj):
                out.append((i, j))
        return out


@dataclass(frozen=True)
class SignedSubset:
    indices: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        sg = tuple(int(s) for s in self.signs)
        if not idx:
            raise InvalidSubset("a signed subset needs at least one index")
        if len(idx) != len(sg):
            raise InvalidSubset("one sign per index")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise InvalidSubset("indices must be distinct and increasing")
        if any(s not in (1, -1) for s in sg):
            raise InvalidSubset("signs must be +1 or -1")
        if idx[0] < 0:
            raise InvalidSubset("negative index")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "signs", sg)

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "SignedSubset":
        items = sorted(mapping.items())
        return cls(tuple(i for i, _ in items), tuple(s for _, s in items))

    @classmethod
    def positive(cls, indices: Iterable[int]) -> "SignedSubset":
        idx = tuple(sorted(indices))
        return cls(idx, (1,) * len(idx))

    def __len__(self) -> int:
        return len(self.indices)

    def items(self):
        return zip(self.indices, self.signs)

    def negated(self) -> "SignedSubset":
        return SignedSubset(self.indices, tuple(-s for s in self.signs))

    def check_within(self, m: int) -> None:
        if self.indices[-1] >= m:
            raise InvalidSubset(f"index {self.indices[-1]} out of range for m = {m}")


def signed_subsets(m: int, k: int, up_to_sign: bool = False) -> Iterator[SignedSubset]:
    """All signed k-subsets of range(m); with ``up_to_sign`` the first sign is +1."""
    for idx in itertools.combinations(range(m), k):
        if up_to_sign:
            for rest in itertools.product((1, -1), repeat=k - 1):
                yield SignedSubset(idx, (1,) + rest)
        else:
            for sg in itertools.product((1, -1), repeat=k):
                yield SignedSubset(idx, sg)


@dataclass(frozen=True)
class FaceCertificate:
    """Hyperplane <a, x> = b through the subset, strictly above the rest."""

    normal: Vector
    offset: Fraction

    def check(self, c: CsConfiguration, s: SignedSubset) -> bool:
        members = dict(s.items())
        for i, sign, w in c.signed_vectors():
            val = sum((x * y for x, y in zip(self.normal, w)), Fraction(0))
            if members.get(i) == sign:
                if val != self.offset:
                    return False
            elif not val < self.offset:
                return False
        return True


@dataclass(frozen=True)
class NeighborlinessReport:
    """Exact neighborliness of one configuration.

    ``exact`` is False when the search stopped at a caller-supplied cap; then
    ``k_max`` is only a lower bound.  ``failing_subset`` is the first signed
    subset found not to span a face (primal oracle only).
    """

    k_max: int
    min_dominant: Optional[int]
    method: str
    witness: object = None
    failing_subset: Optional[SignedSubset] = None
    exact: bool = True
    warnings: tuple[str, ...] = field(default_factory=tuple)


def _face_lp(c: CsConfiguration, s: SignedSubset) -> LpProblem:
    d = c.dim
    members = dict(s.items())
    rows = []
    for i, sign, w in c.signed_vectors():
        coeffs = list(w) + [Fraction(-1)]
        if members.get(i) == sign:
            rows.append(eq(coeffs, 0))
        else:
            rows.append(leq(coeffs, -1))
    return LpProblem(d + 1, tuple(rows))


def is_face_primal(c: CsConfiguration, s: SignedSubset) -> Optional[FaceCertificate]:
    """Certificate that {sign_i v_i : i in s} is exactly the vertex set of a face, else None."""
    s.check_within(c.m)
    out = lp_solve(_face_lp(c, s))
    if isinstance(out, Feasible):
        x = out.witness
        return FaceCertificate(tuple(x[:-1]), x[-1])
    return None


def antipodal_pair(c: CsConfiguration, i: int, di: int, j: int, dj: int) -> bool:
    """Do the signed vertices di*v_i and dj*v_j lie on distinct parallel supporting hyperplanes?"""
    if (i, di) == (j, dj):
        raise ValueError("an antipodal pair needs two distinct signed vertices")
    x = c.signed(i, di)
    y = c.signed(j, dj)
    rows = []
    for _, _, w in c.signed_vectors():
        rows.append(geq([a - b for a, b in zip(x, w)], 0))
        rows.append(geq([a - b for a, b in zip(w, y)], 0))
    rows.append(geq([a - b for a, b in zip(x, y)], 1))
    return isinstance(lp_solve(LpProblem(c.dim, tuple(rows))), Feasible)


@dataclass(frozen=True)
class AntipodalCheck:
    antipodal: bool
    witness: Optional[tuple[Vector, Vector]] = None
    witness_indices: Optional[tuple[tuple[int, int], tuple[int, int]]] = None

    def __bool__(self) -> bool:
        return self.antipodal


def is_antipodal_polytope(c: CsConfiguration) -> AntipodalCheck:
    """Check every unordered pair of signed vertices; report the first failure.

    Pairs (x, y) and (-x, -y) are equivalent, so only pairs whose first
    member carries a + sign are tested, in lexicographic index order.
    """
    labels = [(i, s) for i in range(c.m) for s in (1, -1)]
    for a, b in itertools.combinations(labels, 2):
        if a[1] < 0:
            continue
        if not antipodal_pair(c, a[0], a[1], b[0], b[1]):
            return AntipodalCheck(False, (c.signed(*a), c.signed(*b)), (a, b))
    return AntipodalCheck(True)


def duplicate_warnings(c: CsConfiguration) -> tuple[str, ...]:
    dups = c.duplicate_pairs()
    if not dups:
        return ()
    pairs = ", ".join(f"{i + 1}~{j + 1}" for i, j in dups)
    return (f"vectors coincide up to sign ({pairs}); the 2m points are not distinct vertices",)


def max_neighborliness_primal(c: CsConfiguration, max_k: int | None = None) -> NeighborlinessReport:
    """Largest k such that every signed k-subset spans a face (brute force).

    Intended as an oracle for m up to about 8.  Reports k = m when every
    size passes, which is what happens for cross-polytopes.
    """
    m = c.m
    top = m if max_k is None else min(max_k, m)
    for k in range(1, top + 1):
        for s in signed_subsets(m, k, up_to_sign=True):
            if is_face_primal(c, s) is None:
                return NeighborlinessReport(
                    k - 1, k, PRIMAL_ORACLE, failing_subset=s, warnings=duplicate_warnings(c)
                )
    exact = top == m
    return NeighborlinessReport(top, None, PRIMAL_ORACLE, exact=exact, warnings=duplicate_warnings(c))
