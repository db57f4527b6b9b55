"""Cellular chain complex and first homology of a surface complex.

The cycle lattice ``Z_1`` gets the fundamental-cycle basis of a BFS spanning
tree (a lattice basis, since graph incidence matrices are totally unimodular).
Face boundaries are written in that basis and put in Smith normal form; the
left change of basis splits ``Z_1`` into boundary, torsion and free parts.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotACycle
from .surface import ChainVector, SurfaceComplex


def boundary_matrices(S: SurfaceComplex) -> tuple[list[list[int]], list[list[int]]]:
    """Integer matrices ``(d2, d1)``: d2 is E x F, d1 is V x E."""
    E, F, V = S.n_edges, S.n_faces, S.n_vertices
    d2 = [[0] * F for _ in range(E)]
    for f, word in enumerate(S.faces):
        for lab, sign in word:
            d2[S.index(lab)][f] += sign
    d1 = [[0] * E for _ in range(V)]
    for e in range(E):
        d1[S.head[e]][e] += 1
        d1[S.tail[e]][e] -= 1
    return d2, d1


def smith_normal_form(A: list[list[int]]):
    """Return ``(D, U, Uinv, W)`` with ``U @ A @ W == D`` diagonal, d1 | d2 | ...

    U and W are unimodular; ``Uinv`` is the inverse of U.  Pivoting is
    deterministic (smallest absolute value, first in row-major order), and
    pivots are shifted into place so the remaining rows keep their order.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)]
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:  # column src -= q * column dst
            row[src] -= q * row[dst]

    def swap_cols(i, j):
        for M in (D, W):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (D, W):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return D, U, Uinv, W
            i, j = best
            # shift rather than swap so untouched rows keep their order
            for k in range(i, t, -1):
                swap_rows(k, k - 1)
            for k in range(j, t, -1):
                swap_cols(k, k - 1)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Uinv:
                row[t] = -row[t]
    return D, U, Uinv, W


def spanning_tree(S: SurfaceComplex) -> list[bool]:
    """BFS tree from vertex 0, scanning edges in label order; True marks tree edges."""
    incident = [[] for _ in range(S.n_vertices)]
    for e in range(S.n_edges):
        incident[S.tail[e]].append(e)
        if S.head[e] != S.tail[e]:
            incident[S.head[e]].append(e)
    in_tree = [False] * S.n_edges
    seen = [False] * S.n_vertices
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in incident[v]:
            w = S.head[e] if S.tail[e] == v else S.tail[e]
            if not seen[w]:
                seen[w] = True
                in_tree[e] = True
                queue.append(w)
    return in_tree


def fundamental_cycles(S: SurfaceComplex) -> tuple[list[int], list[list[int]]]:
    """Non-tree edges and, for each, the integer cycle ``e + tree path back``."""
    in_tree = spanning_tree(S)
    parent = {0: None}  # vertex -> (edge, sign to go up toward root)
    adj = [[] for _ in range(S.n_vertices)]
    for e in range(S.n_edges):
        if in_tree[e]:
            adj[S.tail[e]].append((e, S.head[e], 1))
            adj[S.head[e]].append((e, S.tail[e], -1))
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e, w, s in adj[v]:
            if w not in parent:
                parent[w] = (e, s)
                queue.append(w)

    def path_to_root(v, coeffs, sign):
        # adds sign * (path v -> root) to coeffs
        while parent[v] is not None:
            e, s = parent[v]
            coeffs[e] -= sign * s
            v = S.tail[e] if s == 1 else S.head[e]

    nontree = [e for e in range(S.n_edges) if not in_tree[e]]
    cycles = []
    for e in nontree:
        coeffs = [0] * S.n_edges
        coeffs[e] += 1
        path_to_root(S.head[e], coeffs, 1)  # head -> root
        path_to_root(S.tail[e], coeffs, -1)  # root -> tail
        cycles.append(coeffs)
    return nontree, cycles


@dataclass(frozen=True)
class HomologyBasis:
    """H_1 of a surface: free rank, torsion and a chosen lattice basis.

    ``coordinate_map`` is an integer ``b1 x E`` matrix sending a cycle to the
    coordinates of its real class in the basis ``basis_cycles``.
    """

    free_rank: int
    torsion: tuple
    basis_cycles: tuple
    coordinate_map: tuple
    torsion_cycles: tuple = ()

    def coordinates(self, chain) -> list[Fraction]:
        return [sum((Fraction(k) * c for k, c in zip(row, chain) if k and c), Fraction(0))
                for row in self.coordinate_map]


@lru_cache(maxsize=256)
def _homology(faces, labels) -> HomologyBasis:
    S = SurfaceComplex(faces, labels, (1,) * len(labels))
    d2, _ = boundary_matrices(S)
    nontree, cycles = fundamental_cycles(S)
    k = len(nontree)
    # boundary of each face in the fundamental-cycle basis: its non-tree entries
    A = [[d2[e][f] for f in range(S.n_faces)] for e in nontree]
    if k == 0:
        return HomologyBasis(0, (), (), ())
    D, U, Uinv, _ = smith_normal_form(A)
    diag = [D[i][i] for i in range(min(k, S.n_faces))]
    r = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag[:r] if d > 1)

    def z_cycle(col):
        coeffs = [0] * S.n_edges
        for i in range(k):
            c = Uinv[i][col]
            if c:
                for e in range(S.n_edges):
                    coeffs[e] += c * cycles[i][e]
        return ChainVector(coeffs)

    basis = tuple(z_cycle(j) for j in range(r, k))
    tors = tuple(z_cycle(j) for j in range(r) if diag[j] > 1)
    K = []
    for i in range(r, k):
        row = [0] * S.n_edges
        for jj, e in enumerate(nontree):
            row[e] = U[i][jj]
        K.append(tuple(row))
    return HomologyBasis(k - r, torsion, basis, tuple(K), tors)


def homology_h1(S: SurfaceComplex) -> HomologyBasis:
    return _homology(S.faces, S.labels)


def class_of_cycle(S: SurfaceComplex, chain: ChainVector) -> list[Fraction]:
    """Coordinates of the real homology class of a cycle."""
    chain = S.chain(chain)
    if not S.is_cycle(chain):
        raise NotACycle("chain has non-zero boundary")
    return homology_h1(S).coordinates(chain)


def betti_number(S: SurfaceComplex) -> int:
    return homology_h1(S).free_rank
