"""Stable norm of a weighted surface complex, its unit ball, dual norm and flats.

Two independent routes compute the norm:

* an exact LP: minimise ``sum_e w_e |x_e|`` over real cycles ``x`` with a given
  class (``stable_norm``);
* a polytope: the convex hull of ``+-[g]/w(g)`` over all elementary circuits
  ``g`` of the 1-skeleton (``unit_ball``), whose gauge is the norm.

Every minimizing cycle decomposes into circuits without cancellation, which is
why the circuit hull is the whole ball; the tests check the two routes agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import (
    CircuitBudgetExceeded,
    ClassDimensionMismatch,
    DimensionTooLarge,
    NotOnSphere,
    TrivialHomology,
)
from .homology import boundary_matrices, homology_h1
from .hull import Polytope, convex_hull, restrict
from .linalg import affine_dimension, dot
from .ratlp import LinearProgram, solve_standard, solve_weighted_l1
from .surface import ChainVector, SurfaceComplex

DEFAULT_CIRCUIT_CAP = 1_000_000
MAX_BALL_DIM = 6


# ----------------------------------------------------------------- LP route

@dataclass(frozen=True)
class NormCertificate:
    """Optimal value, a basic minimizing cycle and a supporting covector.

    ``covector`` satisfies ``covector . h == value`` and has dual norm <= 1.
    """

    value: Fraction
    minimizer: ChainVector
    covector: tuple


def _check_class(S: SurfaceComplex, h) -> list[Fraction]:
    b1 = homology_h1(S).free_rank
    h = [Fraction(x) for x in h]
    if len(h) != b1:
        raise ClassDimensionMismatch(f"class has {len(h)} coordinates, b1 = {b1}")
    return h


def norm_lp(S: SurfaceComplex, h) -> LinearProgram:
    """Cycle condition (one redundant vertex row dropped) plus ``K x = h``."""
    h = _check_class(S, h)
    _, d1 = boundary_matrices(S)
    K = homology_h1(S).coordinate_map
    rows = [list(r) for r in d1[:-1]] + [list(r) for r in K]
    rhs = [0] * (S.n_vertices - 1) + h
    return LinearProgram(S.weights, rows, rhs)


def stable_norm_certified(S: SurfaceComplex, h) -> NormCertificate:
    lp = norm_lp(S, h)
    sol = solve_weighted_l1(lp)
    assert sol.optimal, "every real class is represented by a real cycle"
    cov = tuple(sol.dual[S.n_vertices - 1:])
    return NormCertificate(sol.value, ChainVector(sol.x), cov)


def stable_norm(S: SurfaceComplex, h) -> tuple[Fraction, ChainVector]:
    """Exact ``(||h||, minimizing cycle)``."""
    cert = stable_norm_certified(S, h)
    return cert.value, cert.minimizer


def circuit_decomposition(S: SurfaceComplex, x: ChainVector) -> list[tuple[ChainVector, Fraction]]:
    """Split a cycle into directed elementary circuits running with its signs.

    Deterministic: always start from the lowest remaining edge and leave each
    vertex through its lowest usable edge.
    """
    x = list(S.chain(x))
    out = []
    while any(x):
        e0 = next(e for e, c in enumerate(x) if c)
        # directed step: (edge, dir) goes from its start vertex to its end vertex
        def start(e):
            return S.tail[e] if x[e] > 0 else S.head[e]

        def end(e):
            return S.head[e] if x[e] > 0 else S.tail[e]

        path = [e0]
        seen = {start(e0): 0}
        v = end(e0)
        while v not in seen:
            seen[v] = len(path)
            nxt = next(e for e, c in enumerate(x) if c and start(e) == v)
            path.append(nxt)
            v = end(nxt)
        loop = path[seen[v]:]
        w = min(abs(x[e]) for e in loop)
        coeffs = [Fraction(0)] * S.n_edges
        for e in loop:
            coeffs[e] = Fraction(1 if x[e] > 0 else -1)
        for e in loop:
            x[e] -= coeffs[e] * w
        out.append((ChainVector(coeffs), w))
    return out


def minimizing_cycles(S: SurfaceComplex, h) -> list[tuple[ChainVector, Fraction]]:
    """A basic LP minimizer of class ``h`` written as sum of weighted circuits."""
    _, x = stable_norm(S, h)
    return circuit_decomposition(S, x)


# ------------------------------------------------------------ circuit route

@dataclass(frozen=True)
class Circuit:
    walk: tuple  # ((edge, +1 | -1), ...)
    homology_class: tuple
    weight: Fraction

    def reversed(self) -> "Circuit":
        return Circuit(tuple((e, -d) for e, d in reversed(self.walk)),
                       tuple(-c for c in self.homology_class), self.weight)


def circuits(S: SurfaceComplex, cap: int = DEFAULT_CIRCUIT_CAP) -> list[Circuit]:
    """All elementary circuits of the 1-skeleton, one orientation each."""
    res = _kernels.enumerate_circuits(S.n_vertices, np.asarray(S.tail, np.int64),
                                      np.asarray(S.head, np.int64), cap)
    if res is None:
        raise CircuitBudgetExceeded(f"more than {cap} elementary circuits")
    edges, dirs = res
    K = homology_h1(S).coordinate_map
    Km = np.array(K, dtype=np.int64).reshape(len(K), S.n_edges)
    C = np.zeros((len(edges), S.n_edges), dtype=np.int64)
    for i, (es, ds) in enumerate(zip(edges, dirs)):
        C[i, es] = ds
    classes = (C @ Km.T).tolist()
    out = []
    for es, ds, cls in zip(edges, dirs, classes):
        w = sum((S.weights[e] for e in es), Fraction(0))
        out.append(Circuit(tuple(zip(es, ds)), tuple(Fraction(c) for c in cls), w))
    return out


@dataclass(frozen=True)
class NormBall:
    polytope: Polytope
    provenance: tuple  # per vertex: the circuit walk realising it

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @property
    def vertices(self) -> tuple:
        return self.polytope.vertices

    @property
    def facets(self) -> tuple:
        return self.polytope.facets

    @property
    def incidence(self) -> tuple:
        return self.polytope.incidence

    def gauge(self, h) -> Fraction:
        return self.polytope.gauge(h)


@lru_cache(maxsize=128)
def _unit_ball(S: SurfaceComplex, cap: int) -> NormBall:
    b1 = homology_h1(S).free_rank
    if b1 == 0:
        raise TrivialHomology(f"{S.name} has b1 = 0")
    if b1 > MAX_BALL_DIM:
        raise DimensionTooLarge(f"b1 = {b1} exceeds the exact hull limit {MAX_BALL_DIM}")
    source = {}
    for c in circuits(S, cap):
        if not any(c.homology_class):
            continue
        for cc in (c, c.reversed()):
            p = tuple(x / cc.weight for x in cc.homology_class)
            source.setdefault(p, cc)
    P = convex_hull(list(source))
    prov = tuple(source[v].walk for v in P.vertices)
    return NormBall(P, prov)


def unit_ball(S: SurfaceComplex, cap: int = DEFAULT_CIRCUIT_CAP) -> NormBall:
    return _unit_ball(S, cap)


def _ball(obj) -> NormBall:
    return obj if isinstance(obj, NormBall) else unit_ball(obj)


def dual_norm(S_or_ball, c: Sequence) -> Fraction:
    """max |c . v| over ball vertices."""
    B = _ball(S_or_ball)
    c = [Fraction(x) for x in c]
    if len(c) != B.dim:
        raise ClassDimensionMismatch(f"covector has {len(c)} coordinates, b1 = {B.dim}")
    return max([Fraction(0)] + [abs(dot(c, v)) for v in B.vertices])


# ------------------------------------------------------------------- flats

@dataclass(frozen=True)
class Flat:
    covector: tuple
    vertex_indices: tuple
    vertices: tuple
    dimension: int


def flat_of(S_or_ball, h) -> Flat:
    """The face of the ball having ``h`` (with ||h|| = 1) in its relative interior."""
    B = _ball(S_or_ball)
    h = [Fraction(x) for x in h]
    if len(h) != B.dim:
        raise ClassDimensionMismatch(f"class has {len(h)} coordinates, b1 = {B.dim}")
    g = B.gauge(h)
    if g != 1:
        raise NotOnSphere(f"||h|| = {g}, not 1")
    tight = B.polytope.tight_facets(h)
    idx = set(range(len(B.vertices)))
    for j in tight:
        idx &= set(B.incidence[j])
    idx = tuple(sorted(idx))
    cov = tuple(sum((B.facets[j][k] for j in tight), Fraction(0)) / len(tight) for k in range(B.dim))
    verts = tuple(B.vertices[i] for i in idx)
    return Flat(cov, idx, verts, affine_dimension(list(verts)))


def face_lattice(B: NormBall) -> list[frozenset]:
    """All non-empty proper faces as vertex-index sets (intersections of facets)."""
    faces = {frozenset(inc) for inc in B.incidence}
    frontier = set(faces)
    while frontier:
        new = set()
        for f in frontier:
            for g in B.incidence:
                m = f & frozenset(g)
                if m and m not in faces:
                    new.add(m)
        faces |= new
        frontier = new
    return sorted(faces, key=lambda f: (len(f), sorted(f)))


def max_interior_weight(points: Sequence[Sequence], rows: Sequence[Sequence], rhs: Sequence) -> Fraction | None:
    """Largest ``t`` with ``x = sum_v (t + mu_v) v``, mu >= 0, weights summing to 1,
    and ``row . x == rhs`` for every row.  ``None`` if no such ``x`` exists.

    ``t > 0`` means some point of the relative interior of conv(points)
    satisfies the equations.
    """
    n = len(points)
    A, b = [], []
    for row, r in zip(rows, rhs):
        vals = [dot(row, p) for p in points]
        A.append(vals + [sum(vals, Fraction(0))])
        b.append(Fraction(r))
    A.append([Fraction(1)] * n + [Fraction(n)])
    b.append(Fraction(1))
    sol = solve_standard([0] * n + [-1], A, b)
    if not sol.optimal:
        return None
    return sol.x[n]


def in_relative_interior(B: NormBall, face: frozenset, h) -> bool:
    pts = [B.vertices[i] for i in sorted(face)]
    d = B.dim
    unit = [[int(i == j) for j in range(d)] for i in range(d)]
    t = max_interior_weight(pts, unit, h)
    return t is not None and t > 0


def facets_containing(B: NormBall, face: frozenset) -> list[int]:
    return [j for j, inc in enumerate(B.incidence) if face <= set(inc)]


def relint_meets(B: NormBall, f1: frozenset, f2: frozenset) -> bool:
    """Does some relative-interior point of ``f1`` lie on ``f2``?"""
    J = facets_containing(B, f2)
    # a relative-interior point puts positive weight on every vertex of f1, so
    # it can only be tight on facet j if every vertex of f1 is
    if any(not f1 <= set(B.incidence[j]) for j in J):
        return False
    pts = [B.vertices[i] for i in sorted(f1)]
    rows = [B.facets[j] for j in J]
    t = max_interior_weight(pts, rows, [1] * len(rows))
    return t is not None and t > 0


def flat_extension_holds(B: NormBall, faces=None) -> bool:
    """Whenever relint(F1) meets F2, one face contains F1 and F2."""
    faces = faces if faces is not None else face_lattice(B)
    fs = set(faces)
    for f1 in faces:
        for f2 in faces:
            if f1 == f2 or not relint_meets(B, f1, f2):
                continue
            union = f1 | f2
            if not any(union <= g for g in fs):
                return False
    return True


def faces_with_point_in_relint(B: NormBall, h, faces=None) -> list[frozenset]:
    faces = faces if faces is not None else face_lattice(B)
    return [f for f in faces if in_relative_interior(B, f, h)]


def is_centrally_symmetric(B: NormBall) -> bool:
    vs = set(B.vertices)
    return all(tuple(-x for x in v) in vs for v in vs)


# ---------------------------------------------------------------- output

def ball_to_json(S: SurfaceComplex, B: NormBall) -> dict:
    def tokens(walk):
        return [S.labels[e] if d == 1 else "-" + S.labels[e] for e, d in walk]

    return {
        "dim": B.dim,
        "vertices": [[str(x) for x in v] for v in B.vertices],
        "facets": [[str(x) for x in c] for c in B.facets],
        "incidence": [list(inc) for inc in B.incidence],
        "provenance": [tokens(w) for w in B.provenance],
    }


def _polygon(points):
    import math
    return sorted(points, key=lambda p: math.atan2(float(p[1]), float(p[0])))


def ball_svg(B: NormBall, axes=(0, 1), size: int = 320) -> str:
    """SVG of a 2-d ball, or of its slice by the plane of two coordinate axes."""
    if B.dim > 1 and (len(axes) != 2 or len(set(axes)) != 2 or not all(0 <= a < B.dim for a in axes)):
        raise ValueError(f"axes {tuple(axes)} do not name two coordinates of a {B.dim}-d ball")
    if B.dim == 1:
        pts = [(v[0], Fraction(0)) for v in B.vertices]
    elif B.dim == 2 and tuple(axes) == (0, 1):
        pts = list(B.vertices)
    else:
        basis = [[int(k == a) for k in range(B.dim)] for a in axes]
        pts = list(restrict(B.polytope, basis).vertices)
    scale = max(max(abs(float(x)) for x in p) for p in pts) or 1.0
    half = size / 2
    k = 0.8 * half / scale

    def xy(p):
        return f"{half + k * float(p[0]):.3f},{half - k * float(p[1]):.3f}"

    poly = " ".join(xy(p) for p in _polygon(pts))
    dots = "".join(f'<circle cx="{xy(p).split(",")[0]}" cy="{xy(p).split(",")[1]}" r="3"/>' for p in pts)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">'
            f'<line x1="0" y1="{half}" x2="{size}" y2="{half}" stroke="#bbb"/>'
            f'<line x1="{half}" y1="0" x2="{half}" y2="{size}" stroke="#bbb"/>'
            f'<polygon points="{poly}" fill="#cde" stroke="#135"/>{dots}</svg>\n')


def grid_classes(b1: int, radius: int = 2, limit: int | None = None) -> list[tuple]:
    """Non-zero integer classes in the cube [-radius, radius]^b1 plus a few halves."""
    import itertools
    out = [tuple(Fraction(x) for x in v)
           for v in itertools.product(range(-radius, radius + 1), repeat=b1) if any(v)]
    out += [tuple(Fraction(x, 2) for x in v)
            for v in itertools.product((-1, 1, 3), repeat=b1)]
    out = sorted(set(out))
    return out[:limit] if limit else out
