"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

``solve_standard`` handles ``min c.z  s.t.  A z = b, z >= 0`` and returns a
basic optimal point together with a dual vector ``y`` (``A^T y <= c``,
``b.y == c.z``).  ``solve_weighted_l1`` minimises ``sum_j w_j |x_j|`` over
``A x = b`` by splitting ``x = x+ - x-``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """minimise sum_j weights[j] * |x_j| subject to A x = b."""

    weights: tuple
    A: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "A", tuple(tuple(Fraction(x) for x in row) for row in self.A))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")
        if len(self.A) != len(self.b):
            raise ValueError("A and b disagree on the number of constraints")
        if any(len(row) != len(self.weights) for row in self.A):
            raise ValueError("A and weights disagree on the number of variables")


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction | None = None
    x: tuple | None = None
    dual: tuple | None = None
    basis: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T, rhs, cost, obj, r, c):
    """Pivot the tableau on (r, c); ``cost`` is the reduced-cost row, obj its value."""
    row = T[r]
    p = row[c]
    if p != 1:
        inv = 1 / p
        row = T[r] = [x * inv if x else x for x in row]
        rhs[r] *= inv
    nz = [j for j, x in enumerate(row) if x]
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][c]
        if f:
            Ti = T[i]
            for j in nz:
                Ti[j] -= f * row[j]
            rhs[i] -= f * rhs[r]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * row[j]
        obj -= f * rhs[r]
    return obj


def _simplex(T, rhs, cost, obj, basis, allowed):
    """Bland's rule iterations; returns (status, obj)."""
    m = len(T)
    while True:
        enter = next((j for j in allowed if cost[j] < 0), None)
        if enter is None:
            return OPTIMAL, obj
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED, obj
        r = best[1]
        obj = _pivot(T, rhs, cost, obj, r, enter)
        basis[r] = enter


def solve_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LpSolution:
    """min c.z  s.t.  A z = b, z >= 0  (exact)."""
    c = [Fraction(x) for x in c]
    m = len(A)
    n = len(c)
    signs = [(-1 if Fraction(bi) < 0 else 1) for bi in b]
    # tableau columns: n structural + m artificial
    T = [[Fraction(x) * s for x in row] + [Fraction(int(i == k)) for k in range(m)]
         for i, (row, s) in enumerate(zip(A, signs))]
    rhs = [Fraction(bi) * s for bi, s in zip(b, signs)]
    basis = [n + i for i in range(m)]

    # phase 1: minimise the sum of artificials
    cost = [Fraction(0)] * (n + m)
    for i in range(m):
        for j in range(n):
            cost[j] -= T[i][j]
    obj = -sum(rhs, Fraction(0))
    status, obj = _simplex(T, rhs, cost, obj, basis, range(n))
    if obj != 0:
        return LpSolution(INFEASIBLE)
    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, rhs, cost, obj, i, j)
                basis[i] = j

    # phase 2
    cost = [Fraction(0)] * (n + m)
    for j in range(n):
        cost[j] = c[j]
    obj = Fraction(0)
    for i, bj in enumerate(basis):
        cb = c[bj] if bj < n else Fraction(0)
        if cb:
            for j in range(n + m):
                if T[i][j]:
                    cost[j] -= cb * T[i][j]
            obj -= cb * rhs[i]
    status, obj = _simplex(T, rhs, cost, obj, basis, range(n))
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED)
    z = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        if bj < n:
            z[bj] = rhs[i]
    # y' = c_B B'^{-1}, read from the artificial columns; undo the row signs
    cB = [c[bj] if bj < n else Fraction(0) for bj in basis]
    y = []
    for k in range(m):
        yk = sum((cB[i] * T[i][n + k] for i in range(m) if cB[i] and T[i][n + k]), Fraction(0))
        y.append(yk * signs[k])
    value = sum((cj * zj for cj, zj in zip(c, z) if zj), Fraction(0))
    return LpSolution(OPTIMAL, value, tuple(z), tuple(y), tuple(basis))


def solve_weighted_l1(lp: LinearProgram) -> LpSolution:
    """Minimise sum w_j |x_j| over A x = b; ``x`` is basic, ``dual`` certifies it.

    The dual satisfies ``|A^T y|_j <= w_j`` for every j and ``b.y == value``.
    """
    n = len(lp.weights)
    A2 = [list(row) + [-x for x in row] for row in lp.A]
    sol = solve_standard(list(lp.weights) * 2, A2, lp.b)
    if not sol.optimal:
        return sol
    x = tuple(sol.x[j] - sol.x[n + j] for j in range(n))
    return LpSolution(OPTIMAL, sol.value, x, sol.dual, sol.basis)


def check_certificate(lp: LinearProgram, sol: LpSolution) -> bool:
    """Primal feasibility, dual feasibility and zero duality gap, all exact."""
    if not sol.optimal:
        return False
    for row, bi in zip(lp.A, lp.b):
        if sum((a * x for a, x in zip(row, sol.x) if a and x), Fraction(0)) != bi:
            return False
    primal = sum((w * abs(x) for w, x in zip(lp.weights, sol.x)), Fraction(0))
    if primal != sol.value:
        return False
    for j, w in enumerate(lp.weights):
        s = sum((row[j] * y for row, y in zip(lp.A, sol.dual) if row[j] and y), Fraction(0))
        if abs(s) > w:
            return False
    dual_value = sum((bi * y for bi, y in zip(lp.b, sol.dual)), Fraction(0))
    return dual_value == primal
