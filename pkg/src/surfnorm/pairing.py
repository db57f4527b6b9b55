"""Algebraic intersection numbers on an oriented surface complex.

The second cycle is pushed slightly to the left of every edge it uses; near
each vertex the pushed copy is closed up along a small arc that turns
counter-clockwise through the corners, and every edge-end that arc passes
over contributes a signed crossing with the first cycle.  Only the rotation
system is needed, so the count is exact and geometry-free.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cover import DoubleCover
from .errors import NotACycle, NotOrientable
from .homology import class_of_cycle, homology_h1
from .linalg import determinant, rank
from .surface import ChainVector, SurfaceComplex


def _require_oriented(S: SurfaceComplex):
    if not S.is_orientable:
        raise NotOrientable(f"{S.name} is not orientable; use its orientation cover")


def crossing_number(S: SurfaceComplex, x: ChainVector, y: ChainVector) -> Fraction:
    """Signed count of crossings of ``x`` with the left push-off of ``y``."""
    _require_oriented(S)
    x, y = S.chain(x), S.chain(y)
    if not (S.is_cycle(x) and S.is_cycle(y)):
        raise NotACycle("intersection numbers need cycles")
    total = Fraction(0)
    for ring in S.rotation:
        n = len(ring)
        gap_of = {h: k for k, h in enumerate(ring)}  # gap k sits between ring[k] and ring[k+1]
        demand = [Fraction(0)] * n
        for k, h in enumerate(ring):
            c = y[h // 2]
            if not c:
                continue
            if h % 2 == 0:  # tail end: the copy leaves from the gap after h
                demand[gap_of[h]] -= c
            else:  # head end: the copy arrives in the gap before h
                demand[(k - 1) % n] += c
        flow = Fraction(0)
        for k in range(n):
            flow += demand[k]
            if not flow:
                continue
            h = ring[(k + 1) % n]
            c = x[h // 2]
            if c:
                total += flow * (c if h % 2 == 0 else -c)
    return total


@dataclass(frozen=True)
class IntersectionForm:
    matrix: tuple  # integer, skew-symmetric, in the homology basis

    def __call__(self, u, v) -> Fraction:
        return sum((Fraction(u[i]) * self.matrix[i][j] * Fraction(v[j])
                    for i in range(len(u)) for j in range(len(v))
                    if u[i] and v[j] and self.matrix[i][j]), Fraction(0))

    def determinant(self) -> Fraction:
        return determinant(self.matrix)


def intersection_form(S: SurfaceComplex) -> IntersectionForm:
    _require_oriented(S)
    basis = homology_h1(S).basis_cycles
    M = tuple(tuple(int(crossing_number(S, zi, zj)) for zj in basis) for zi in basis)
    return IntersectionForm(M)


def int_number(S: SurfaceComplex, g1, g2) -> Fraction:
    """Int([g1], [g2]) evaluated through the form matrix."""
    _require_oriented(S)
    u = class_of_cycle(S, S.chain(g1))
    v = class_of_cycle(S, S.chain(g2))
    return intersection_form(S)(u, v)


def is_isotropic(form: IntersectionForm, vectors) -> bool:
    return all(form(u, v) == 0 for u in vectors for v in vectors)


def check_lagrangian(D: DoubleCover) -> bool:
    """Both eigenspaces of the deck involution are Lagrangian for Int on the cover."""
    form = intersection_form(D.total)
    b1 = len(form.matrix)
    for basis in (D.E1_basis, D.Em1_basis):
        if 2 * len(basis) != b1 or (basis and rank(basis) != len(basis)):
            return False
        if not is_isotropic(form, basis):
            return False
    return True
