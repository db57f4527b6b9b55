"""Orientation double cover of a non-orientable surface complex.

Each face ``f`` gets two copies ``(f, +1)`` (word as written) and ``(f, -1)``
(word reversed and inverted).  The edge glued along the first occurrence of
label ``e`` in copy ``(f1, s)`` is the lifted edge ``e.0`` (s = +1) or ``e.1``
(s = -1); it is glued to the second occurrence in the copy whose local
orientation makes the identification orientation-reversing, so the total
space is oriented by construction.  Lifted edges keep the direction and
weight of the edge they cover.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import BaseOrientable, NotAClosedWalk, NotSimple
from .homology import class_of_cycle, homology_h1
from .linalg import matvec, nullspace
from .surface import ChainVector, SurfaceComplex, Walk, embedded_walk


@dataclass(frozen=True)
class DoubleCover:
    base: SurfaceComplex
    total: SurfaceComplex
    edge_lift: tuple  # base edge -> (total edge over sheet 0, over sheet 1)
    edge_projection: tuple
    edge_involution: tuple
    face_projection: tuple
    face_involution: tuple
    vertex_projection: tuple
    vertex_involution: tuple
    I_star: tuple  # b1(total) x b1(total), integer
    pi_star: tuple  # b1(base) x b1(total), integer
    E1_basis: tuple
    Em1_basis: tuple

    def involution_chain(self, chain: ChainVector) -> ChainVector:
        out = [Fraction(0)] * self.total.n_edges
        for e, c in enumerate(chain):
            if c:
                out[self.edge_involution[e]] += c
        return ChainVector(out)

    def project_chain(self, chain: ChainVector) -> ChainVector:
        out = [Fraction(0)] * self.base.n_edges
        for e, c in enumerate(chain):
            if c:
                out[self.edge_projection[e]] += c
        return ChainVector(out)

    def transfer_chain(self, chain: ChainVector) -> ChainVector:
        """Full preimage of a base chain (sum of both lifts)."""
        out = [Fraction(0)] * self.total.n_edges
        for e, c in enumerate(chain):
            if c:
                for t in self.edge_lift[e]:
                    out[t] += c
        return ChainVector(out)


def _check_map(pairs, size, what):
    out = [None] * size
    for a, b in pairs:
        if out[a] is None:
            out[a] = b
        elif out[a] != b:
            raise AssertionError(f"{what} is not well defined")
    if None in out:
        raise AssertionError(f"{what} is not total")
    return tuple(out)


@lru_cache(maxsize=64)
def orientation_cover(S: SurfaceComplex) -> DoubleCover:
    """Build the orientation double cover of a non-orientable complex."""
    if S.is_orientable:
        raise BaseOrientable(f"{S.name} is orientable; its orientation cover is disconnected")
    F = S.n_faces
    occ_slot = {}  # (f, i) -> (edge, 0 | 1 for first/second occurrence)
    for e, occs in enumerate(S.occurrences):
        for k, (f, i, _) in enumerate(occs):
            occ_slot[(f, i)] = (e, k)

    def lifted(e, f, i, t):
        (f1, _, s1), (f2, _, s2) = S.occurrences[e]
        _, k = occ_slot[(f, i)]
        s = t if k == 0 else -t * s1 * s2
        return f"{S.labels[e]}.{0 if s == 1 else 1}"

    words = []
    face_keys = [(f, 1) for f in range(F)] + [(f, -1) for f in range(F)]
    for f, t in face_keys:
        word = [(lifted(S.index(lab), f, i, t), sign) for i, (lab, sign) in enumerate(S.faces[f])]
        if t == -1:
            word = [(lab, -sign) for lab, sign in reversed(word)]
        words.append(word)
    weights = {}
    for e, lab in enumerate(S.labels):
        weights[f"{lab}.0"] = S.weights[e]
        weights[f"{lab}.1"] = S.weights[e]
    total = SurfaceComplex.build(words, weights, name=f"{S.name}_cover")
    assert total.is_orientable, "orientation cover must be orientable"
    assert total.euler_characteristic == 2 * S.euler_characteristic

    edge_lift = tuple((total.index(f"{lab}.0"), total.index(f"{lab}.1")) for lab in S.labels)
    proj = [None] * total.n_edges
    inv = [None] * total.n_edges
    for e, (a, b) in enumerate(edge_lift):
        proj[a] = proj[b] = e
        inv[a], inv[b] = b, a
    face_projection = tuple(f for f, _ in face_keys)
    face_involution = tuple((k + F) % (2 * F) for k in range(2 * F))
    vproj = _check_map(
        [(total.tail[t], S.tail[proj[t]]) for t in range(total.n_edges)]
        + [(total.head[t], S.head[proj[t]]) for t in range(total.n_edges)],
        total.n_vertices, "vertex projection")
    vinv = _check_map(
        [(total.tail[t], total.tail[inv[t]]) for t in range(total.n_edges)]
        + [(total.head[t], total.head[inv[t]]) for t in range(total.n_edges)],
        total.n_vertices, "vertex involution")
    assert all(vinv[v] != v for v in range(total.n_vertices)), "involution fixes a vertex"

    Ht = homology_h1(total)
    cols_I, cols_pi = [], []
    for z in Ht.basis_cycles:
        Iz = [Fraction(0)] * total.n_edges
        pz = [Fraction(0)] * S.n_edges
        for t, c in enumerate(z):
            if c:
                Iz[inv[t]] += c
                pz[proj[t]] += c
        cols_I.append(Ht.coordinates(Iz))
        cols_pi.append(homology_h1(S).coordinates(pz))
    b1t = Ht.free_rank
    b1 = homology_h1(S).free_rank
    I_star = tuple(tuple(int(cols_I[j][i]) for j in range(b1t)) for i in range(b1t))
    pi_star = tuple(tuple(int(cols_pi[j][i]) for j in range(b1t)) for i in range(b1))
    ident = [[int(i == j) for j in range(b1t)] for i in range(b1t)]
    plus = [[I_star[i][j] - ident[i][j] for j in range(b1t)] for i in range(b1t)]
    minus = [[I_star[i][j] + ident[i][j] for j in range(b1t)] for i in range(b1t)]
    E1 = tuple(tuple(v) for v in nullspace(plus, b1t))
    Em1 = tuple(tuple(v) for v in nullspace(minus, b1t))
    return DoubleCover(S, total, edge_lift, tuple(proj), tuple(inv), face_projection,
                       face_involution, vproj, vinv, I_star, pi_star, E1, Em1)


def eigenspaces(D: DoubleCover) -> tuple[tuple, tuple]:
    """Bases of the +1 and -1 eigenspaces of the involution on H_1(total, Q)."""
    return D.E1_basis, D.Em1_basis


def pushforward(D: DoubleCover, h: Sequence) -> list[Fraction]:
    return matvec(D.pi_star, [Fraction(x) for x in h])


def _as_walk(S: SurfaceComplex, curve) -> Walk:
    if isinstance(curve, ChainVector) or isinstance(curve, (str, dict)):
        chain = S.chain(curve)
        walk = embedded_walk(S, chain)  # raises NotAClosedWalk on bad chains
        if walk is None:
            raise NotSimple("chain admits no embedding as one simple closed curve")
        return walk
    walk = tuple((int(e), int(d)) for e, d in curve)
    if not walk:
        raise NotAClosedWalk("empty walk")
    return walk


def _walk_vertex(S, step, at_start):
    e, d = step
    return S.tail[e] if (d == 1) == at_start else S.head[e]


def lift_cycle(D: DoubleCover, curve) -> list[ChainVector]:
    """Connected components of the preimage of a closed walk (1 or 2 chains)."""
    S, T = D.base, D.total
    walk = _as_walk(S, curve)
    for a, b in zip(walk, walk[1:] + walk[:1]):
        if _walk_vertex(S, a, False) != _walk_vertex(S, b, True):
            raise NotAClosedWalk("consecutive steps do not meet")
    e0, d0 = walk[0]
    start = _walk_vertex(T, (D.edge_lift[e0][0], d0), True)

    def run(v):
        coeffs = [Fraction(0)] * T.n_edges
        for e, d in walk:
            for t in D.edge_lift[e]:
                if _walk_vertex(T, (t, d), True) == v:
                    coeffs[t] += d
                    v = _walk_vertex(T, (t, d), False)
                    break
            else:  # pragma: no cover - the cover is a graph covering
                raise AssertionError("path lifting failed")
        return coeffs, v

    first, end = run(start)
    if end == start:
        second, _ = run(D.vertex_involution[start])
        return [ChainVector(first), ChainVector(second)]
    rest, back = run(end)
    assert back == start
    return [ChainVector(a + b for a, b in zip(first, rest))]


@dataclass(frozen=True)
class CurveType:
    sidedness: str  # "one-sided" | "two-sided"
    type: str  # "I" | "II"
    lift_classes: tuple


def classify_curve(S: SurfaceComplex, curve) -> CurveType:
    """Sidedness and type I/II of a simple closed curve on a non-orientable surface."""
    if S.is_orientable:
        raise BaseOrientable("type I/II is defined through the cover of a non-orientable surface")
    D = orientation_cover(S)
    comps = lift_cycle(D, curve)
    classes = tuple(tuple(class_of_cycle(D.total, c)) for c in comps)
    if len(comps) == 1:
        return CurveType("one-sided", "I", classes)
    kind = "I" if classes[0] == classes[1] else "II"
    return CurveType("two-sided", kind, classes)
