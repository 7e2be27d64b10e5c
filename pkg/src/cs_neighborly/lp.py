"""Exact rational linear algebra and linear programming.

Everything here works over ``fractions.Fraction``.  The simplex solver pivots
on an integer tableau (every row is scaled to integers once, then updated by
the fraction-free rule ``(a*p - f*b) // D``), so no rational is formed until a
result is read off.  Bland's rule guarantees termination.

Infeasible problems come back with Farkas multipliers and optimal ones with
dual multipliers, both checkable by :func:`verify_farkas` / :func:`verify_duals`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ParseError, RankDeficient

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

LE, GE, EQ = "<=", ">=", "=="


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions, and "p/q" or decimal strings exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            if "/" in s:
                return Fraction(s)
            return Fraction(Decimal(s))
        except (ValueError, ZeroDivisionError, InvalidOperation) as exc:
            raise ParseError(f"not a rational number: {x!r}") from exc
    if isinstance(x, float):
        return Fraction(x)
    # numpy integers and the like
    return Fraction(int(x))


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(as_fraction(v) for v in row) for row in rows)


def transpose(M: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return tuple(tuple(row[j] for row in M) for j in range(ncols))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]]) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    A = [list(map(Fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def rank(M: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(M)[1])


def nullspace_basis(M: Sequence[Sequence[Fraction]], d: int | None = None) -> Matrix:
    """Canonical basis of ``{lam : M^T lam = 0}`` for an m x d matrix ``M``.

    Returns an m x n matrix whose columns are the basis, n = m - d.  The
    columns are in reduced column echelon form, so the result depends only on
    the subspace, not on how it was computed.
    """
    m = len(M)
    if d is None:
        d = len(M[0]) if m else 0
    Mt = transpose(M, d)
    R, pivots = rref(Mt, m)
    if len(pivots) < d:
        raise RankDeficient(f"rank {len(pivots)} < {d}")
    free = [j for j in range(m) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    canon, _ = rref(basis, m)
    return transpose(canon, m) if canon else tuple(() for _ in range(m))


# ---------------------------------------------------------------- LP model


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rel: str
    rhs: Fraction


def leq(coeffs, rhs) -> Constraint:
    return Constraint(tuple(coeffs), LE, rhs)


def geq(coeffs, rhs) -> Constraint:
    return Constraint(tuple(coeffs), GE, rhs)


def eq(coeffs, rhs) -> Constraint:
    return Constraint(tuple(coeffs), EQ, rhs)


@dataclass(frozen=True)
class LpProblem:
    """Variables are free unless listed in ``nonneg``."""

    n_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple | None = None
    sense: str = "min"
    nonneg: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coeffs) != self.n_vars:
                raise ValueError("constraint length does not match variable count")
            if c.rel not in (LE, GE, EQ):
                raise ValueError(f"unknown relation {c.rel!r}")
        if self.objective is not None and len(self.objective) != self.n_vars:
            raise ValueError("objective length does not match variable count")
        if self.sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")


@dataclass(frozen=True)
class Feasible:
    witness: Vector
    status = "feasible"


@dataclass(frozen=True)
class Infeasible:
    """``farkas[i]`` multiplies constraint i in its <= orientation (>= rows negated)."""

    farkas: Vector
    status = "infeasible"


@dataclass(frozen=True)
class Optimal:
    """``duals`` satisfy ``g + sum_i duals[i] * a_i = 0`` on free variables
    (``>= 0`` on nonnegative ones) with ``g`` the objective of the equivalent
    minimisation and ``a_i`` row i in <= orientation."""

    witness: Vector
    value: Fraction
    duals: Vector
    status = "optimal"


@dataclass(frozen=True)
class Unbounded:
    status = "unbounded"


LpOutcome = Union[Feasible, Infeasible, Optimal, Unbounded]


def _le_form(c: Constraint) -> tuple[list[Fraction], Fraction]:
    a = [as_fraction(x) for x in c.coeffs]
    b = as_fraction(c.rhs)
    if c.rel == GE:
        return [-x for x in a], -b
    return a, b


def _lcm_den(values) -> int:
    L = 1
    for v in values:
        L = math.lcm(L, v.denominator)
    return L


class _Tableau:
    """Integer-preserving tableau: true entries are ``T[i][j] / D``."""

    def __init__(self, T, basis):
        self.T = T
        self.basis = basis
        self.D = 1
        self.objrows: list[list[int]] = []

    def pivot(self, r: int, k: int) -> None:
        T, D = self.T, self.D
        rowr = T[r]
        p = rowr[k]
        for i in range(len(T)):
            if i != r:
                T[i] = self._update(T[i], rowr, p, k, D)
        for idx, R in enumerate(self.objrows):
            self.objrows[idx] = self._update(R, rowr, p, k, D)
        self.basis[r] = k
        self.D = p
        if p < 0:
            self.D = -p
            self.T = [[-x for x in row] for row in self.T]
            self.objrows = [[-x for x in R] for R in self.objrows]

    @staticmethod
    def _update(row, rowr, p, k, D):
        f = row[k]
        if f == 0:
            if p == D:
                return row
            return [a * p // D for a in row]
        return [(a * p - f * b) // D for a, b in zip(row, rowr)]

    def run(self, allowed: Sequence[bool]) -> bool:
        """Bland's-rule simplex on objrows[0]; False means unbounded."""
        ncols = len(allowed)
        while True:
            R = self.objrows[0]
            k = next((j for j in range(ncols) if allowed[j] and R[j] < 0), None)
            if k is None:
                return True
            T = self.T
            best = None
            for i, row in enumerate(T):
                a = row[k]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    lhs = row[-1] * T[best][k]
                    rhs = T[best][-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return False
            self.pivot(best, k)


def lp_solve(p: LpProblem) -> LpOutcome:
    """Solve ``p`` exactly with a two-phase simplex."""
    # structural columns: free variables are split x = x+ - x-
    var_cols: list[tuple[int, int]] = []
    for j in range(p.n_vars):
        var_cols.append((j, 1))
        if j not in p.nonneg:
            var_cols.append((j, -1))
    n_struct = len(var_cols)

    rows_int = []
    scale = []  # sigma_i * lambda_i
    for c in p.constraints:
        a, b = _le_form(c)
        lam = _lcm_den(a + [b])
        ai = [x.numerator * (lam // x.denominator) for x in a]
        bi = b.numerator * (lam // b.denominator)
        sigma = 1
        if bi < 0:
            ai = [-x for x in ai]
            bi = -bi
            sigma = -1
        rows_int.append((ai, bi, c.rel != EQ, sigma))
        scale.append(sigma * lam)

    n_rows = len(rows_int)
    n_slack = sum(1 for r in rows_int if r[2])
    needs_art = [not (has_slack and sigma == 1) for (_, _, has_slack, sigma) in rows_int]
    n_art = sum(needs_art)
    ncols = n_struct + n_slack + n_art

    T = []
    basis = []
    unit_col = []
    s_idx = n_struct
    a_idx = n_struct + n_slack
    for i, (ai, bi, has_slack, sigma) in enumerate(rows_int):
        row = [0] * (ncols + 1)
        for col, (j, sgn) in enumerate(var_cols):
            row[col] = ai[j] * sgn
        if has_slack:
            row[s_idx] = sigma
            if sigma == 1:
                basis.append(s_idx)
                unit_col.append(s_idx)
            s_idx += 1
        if needs_art[i]:
            row[a_idx] = 1
            basis.append(a_idx)
            unit_col.append(a_idx)
            a_idx += 1
        row[ncols] = bi
        T.append(row)

    is_art = [False] * (n_struct + n_slack) + [True] * n_art
    tab = _Tableau(T, basis)

    if n_art:
        cost1 = [1 if a else 0 for a in is_art] + [0]
        R = list(cost1)
        for i, row in enumerate(T):
            if cost1[basis[i]]:
                R = [x - y for x, y in zip(R, row)]
        tab.objrows = [R]
        tab.run([True] * ncols)
        R = tab.objrows[0]
        if R[-1] != 0:
            D = tab.D
            farkas = tuple(
                -scale[i] * (cost1[unit_col[i]] - Fraction(R[unit_col[i]], D))
                for i in range(n_rows)
            )
            return Infeasible(farkas)
        for r in range(n_rows):
            if is_art[tab.basis[r]]:
                row = tab.T[r]
                k = next((j for j in range(n_struct + n_slack) if row[j] != 0), None)
                if k is not None:
                    tab.pivot(r, k)

    def witness() -> Vector:
        vals = [Fraction(0)] * ncols
        for i, bcol in enumerate(tab.basis):
            vals[bcol] = Fraction(tab.T[i][-1], tab.D)
        x = [Fraction(0)] * p.n_vars
        for col, (j, sgn) in enumerate(var_cols):
            if vals[col]:
                x[j] += sgn * vals[col]
        return tuple(x)

    if p.objective is None:
        return Feasible(witness())

    g = [as_fraction(x) for x in p.objective]
    if p.sense == "max":
        g = [-x for x in g]
    L = _lcm_den(g)
    gi = [x.numerator * (L // x.denominator) for x in g]
    cost2 = [gi[j] * sgn for (j, sgn) in var_cols] + [0] * (n_slack + n_art) + [0]
    D = tab.D
    R = [D * c for c in cost2]
    for i, row in enumerate(tab.T):
        cb = cost2[tab.basis[i]]
        if cb:
            R = [x - cb * y for x, y in zip(R, row)]
    tab.objrows = [R]
    if not tab.run([not a for a in is_art]):
        return Unbounded()
    R = tab.objrows[0]
    D = tab.D
    value = Fraction(-R[-1], D * L)
    if p.sense == "max":
        value = -value
    duals = tuple(
        -scale[i] * (Fraction(cost2[unit_col[i]]) - Fraction(R[unit_col[i]], D)) / L
        for i in range(n_rows)
    )
    return Optimal(witness(), value, duals)


# ---------------------------------------------------------------- checkers


def verify_witness(p: LpProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != p.n_vars:
        return False
    if any(x[j] < 0 for j in p.nonneg):
        return False
    for c in p.constraints:
        lhs = dot([as_fraction(v) for v in c.coeffs], x)
        rhs = as_fraction(c.rhs)
        if c.rel == LE and not lhs <= rhs:
            return False
        if c.rel == GE and not lhs >= rhs:
            return False
        if c.rel == EQ and lhs != rhs:
            return False
    return True


def _combination(p: LpProblem, y: Sequence[Fraction]) -> tuple[list[Fraction], Fraction]:
    combo = [Fraction(0)] * p.n_vars
    total = Fraction(0)
    for yi, c in zip(y, p.constraints):
        a, b = _le_form(c)
        for j in range(p.n_vars):
            combo[j] += yi * a[j]
        total += yi * b
    return combo, total


def verify_farkas(p: LpProblem, y: Sequence[Fraction]) -> bool:
    """True iff ``y`` proves that ``p`` has no feasible point."""
    if len(y) != len(p.constraints):
        return False
    if any(yi < 0 for yi, c in zip(y, p.constraints) if c.rel != EQ):
        return False
    combo, total = _combination(p, y)
    for j, v in enumerate(combo):
        if j in p.nonneg:
            if v < 0:
                return False
        elif v != 0:
            return False
    return total < 0


def verify_duals(p: LpProblem, out: Optimal) -> bool:
    """Check dual feasibility and a zero duality gap for an optimal outcome."""
    if any(yi < 0 for yi, c in zip(out.duals, p.constraints) if c.rel != EQ):
        return False
    g = [as_fraction(x) for x in p.objective]
    if p.sense == "max":
        g = [-x for x in g]
    combo, total = _combination(p, out.duals)
    for j in range(p.n_vars):
        v = g[j] + combo[j]
        if j in p.nonneg:
            if v < 0:
                return False
        elif v != 0:
            return False
    primal = dot(g, out.witness)
    return primal == -total and verify_witness(p, out.witness)
