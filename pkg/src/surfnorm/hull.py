"""Exact convex hulls of point sets containing the origin in their interior.

The facets of ``P = conv(points)`` are the vertices of the polar polytope
``{c : c.p <= 1 for all p}``.  Those are found as the extreme rays of the cone
``{(c, t) : p.c <= t}`` with the double-description method over Python
integers; ray adjacency uses the combinatorial test from ``_kernels``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from . import _kernels
from .linalg import affine_dimension, dot, inverse, primitive, rank


class DegenerateHull(ValueError):
    """The points do not surround the origin (hull not full-dimensional)."""


@dataclass(frozen=True)
class Polytope:
    """H/V description: ``facets`` are covectors c with c.x <= 1 on the polytope."""

    vertices: tuple
    facets: tuple
    incidence: tuple  # per facet: sorted vertex indices with c.v == 1

    @property
    def dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def gauge(self, h: Sequence) -> Fraction:
        h = [Fraction(x) for x in h]
        return max([Fraction(0)] + [dot(c, h) for c in self.facets])

    def contains(self, h: Sequence) -> bool:
        return self.gauge(h) <= 1

    def tight_facets(self, h: Sequence) -> list[int]:
        return [i for i, c in enumerate(self.facets) if dot(c, h) == 1]


def _key(v):
    return tuple(v)


def _initial_rows(rows, n):
    chosen = []
    for i, row in enumerate(rows):
        if rank([rows[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
            if len(chosen) == n:
                return chosen
    raise DegenerateHull("points do not span the ambient space around the origin")


def _extreme_rays(rows: list[list[int]]) -> list[list[int]]:
    """Extreme rays of the pointed cone {x : a.x <= 0 for all rows a}."""
    n = len(rows[0])
    m = len(rows)
    init = _initial_rows(rows, n)
    A0 = [[Fraction(x) for x in rows[i]] for i in init]
    inv = inverse(A0)
    rays = [primitive([-inv[r][j] for r in range(n)]) for j in range(n)]
    zero = np.zeros((n, m), dtype=bool)
    for j in range(n):
        for k, i in enumerate(init):
            if k != j:
                zero[j, i] = True
    done = set(init)
    for i in range(m):
        if i in done:
            continue
        a = rows[i]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [k for k, s in enumerate(vals) if s > 0]
        neg = [k for k, s in enumerate(vals) if s < 0]
        new_rays = [rays[k] for k, s in enumerate(vals) if s <= 0]
        keep = [k for k, s in enumerate(vals) if s <= 0]
        new_zero = [zero[k].copy() for k in keep]
        for row_z, k in zip(new_zero, keep):
            if vals[k] == 0:
                row_z[i] = True
        if pos and neg:
            zp = zero[pos].astype(np.int64)
            zn = zero[neg].astype(np.int64)
            counts = zp @ zn.T
            cand = np.argwhere(counts >= n - 2)
            if len(cand):
                pairs = np.column_stack([np.asarray(pos)[cand[:, 0]], np.asarray(neg)[cand[:, 1]]])
                ok = _kernels.adjacent_pairs(zero, pairs, n - 2)
                for (p, q), good in zip(pairs.tolist(), ok.tolist()):
                    if not good:
                        continue
                    sp, sq = vals[p], vals[q]
                    r = [sp * y - sq * x for x, y in zip(rays[p], rays[q])]
                    g = 0
                    for x in r:
                        g = gcd(g, x)
                    new_rays.append([x // g for x in r])
                    z = zero[p] & zero[q]
                    z[i] = True
                    new_zero.append(z)
        rays = new_rays
        zero = np.array(new_zero, dtype=bool).reshape(len(rays), m)
        done.add(i)
    return rays


def _rows_for(points):
    rows = []
    for p in points:
        rows.append(primitive([Fraction(x) for x in p] + [Fraction(-1)]))
    return rows


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    """Vertices, facets and incidences of ``conv(points)``; origin must be interior."""
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    if not pts:
        raise DegenerateHull("no points")
    d = len(pts[0])
    if d == 0:
        raise DegenerateHull("zero-dimensional ambient space")
    rays = _extreme_rays(_rows_for(pts))
    facets = set()
    for r in rays:
        t = r[d]
        if t <= 0:
            raise DegenerateHull("origin is not interior to the hull")
        facets.add(tuple(Fraction(x, t) for x in r[:d]))
    facets = sorted(facets)
    vertices = []
    for p in pts:
        tight = [c for c in facets if dot(c, p) == 1]
        if tight and rank(tight) == d:
            vertices.append(p)
    incidence = tuple(
        tuple(k for k, v in enumerate(vertices) if dot(c, v) == 1) for c in facets
    )
    return Polytope(tuple(vertices), tuple(facets), incidence)


def polar(P: Polytope) -> Polytope:
    """The polar polytope: facets and vertices swap roles."""
    incidence = tuple(
        tuple(j for j, inc in enumerate(P.incidence) if k in inc) for k in range(len(P.vertices))
    )
    return Polytope(P.facets, P.vertices, incidence)


def restrict(P: Polytope, basis: Sequence[Sequence]) -> Polytope:
    """``P`` intersected with span(basis), in coordinates of that basis.

    ``basis`` is a list of linearly independent vectors of the ambient space.
    """
    k = len(basis)
    covectors = [[dot(c, b) for b in basis] for c in P.facets]
    if k == 0:
        raise DegenerateHull("empty basis")
    return polar(convex_hull(covectors))


def face_dimension(vertices: Sequence[Sequence]) -> int:
    return affine_dimension(list(vertices))
