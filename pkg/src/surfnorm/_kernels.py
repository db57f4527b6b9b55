"""Integer hot loops: circuit enumeration and the double-description adjacency test.

Both kernels exist twice: a numba ``@njit`` version and a plain Python / numpy
version producing identical output in identical order.  Set
``SURFNORM_DISABLE_NUMBA=1`` (or run without numba installed) to use the
fallback.  Only integer and boolean arrays pass through here; all rational
arithmetic stays in the callers.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None

_DISABLED = os.environ.get("SURFNORM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
NUMBA_AVAILABLE = numba is not None
_use_numba = NUMBA_AVAILABLE and not _DISABLED


def using_numba() -> bool:
    return _use_numba


def set_backend(name: str) -> None:
    """Switch between ``"numba"`` and ``"python"`` at runtime (tests, benchmarks)."""
    global _use_numba
    if name == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError("numba is not installed")
        _use_numba = True
    elif name == "python":
        _use_numba = False
    else:
        raise ValueError(f"unknown backend {name!r}")


# ------------------------------------------------------------ circuits

def _circuit_dfs(offsets, nbr_edge, nbr_vert, nbr_dir, n_vertices, cap, fill,
                 out_edges, out_dirs, out_offsets):
    # Circuits of length >= 2 whose smallest vertex is the DFS root; each
    # undirected circuit is kept once, in the direction whose first edge has
    # the smaller index than the closing edge.
    path_v = np.empty(n_vertices + 1, np.int64)
    path_e = np.empty(n_vertices + 1, np.int64)
    path_d = np.empty(n_vertices + 1, np.int64)
    it = np.empty(n_vertices + 1, np.int64)
    on_path = np.zeros(n_vertices, np.bool_)
    count = 0
    total = 0
    for s in range(n_vertices):
        depth = 0
        path_v[0] = s
        it[0] = offsets[s]
        on_path[s] = True
        while depth >= 0:
            u = path_v[depth]
            k = it[depth]
            if k == offsets[u + 1]:
                on_path[u] = False
                depth -= 1
                continue
            it[depth] = k + 1
            w = nbr_vert[k]
            e = nbr_edge[k]
            if w == s:
                if depth >= 1 and path_e[0] < e:
                    if fill:
                        base = out_offsets[count]
                        for i in range(depth):
                            out_edges[base + i] = path_e[i]
                            out_dirs[base + i] = path_d[i]
                        out_edges[base + depth] = e
                        out_dirs[base + depth] = nbr_dir[k]
                        out_offsets[count + 1] = base + depth + 1
                    count += 1
                    total += depth + 1
                    if count > cap:
                        return count, total
            elif w > s and not on_path[w]:
                path_e[depth] = e
                path_d[depth] = nbr_dir[k]
                depth += 1
                path_v[depth] = w
                it[depth] = offsets[w]
                on_path[w] = True
    return count, total


if NUMBA_AVAILABLE:
    _circuit_dfs_nb = numba.njit(cache=True)(_circuit_dfs)
else:  # pragma: no cover
    _circuit_dfs_nb = None


def _adjacency_csr(n_vertices, tail, head):
    entries = [[] for _ in range(n_vertices)]
    for e, (t, h) in enumerate(zip(tail, head)):
        if t == h:
            continue
        entries[t].append((e, h, 1))
        entries[h].append((e, t, -1))
    offsets = np.zeros(n_vertices + 1, np.int64)
    flat = []
    for v, lst in enumerate(entries):
        lst.sort()
        flat.extend(lst)
        offsets[v + 1] = len(flat)
    arr = np.array(flat, np.int64).reshape(-1, 3)
    return offsets, arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy()


def circuits_numba(n_vertices, tail, head, cap):
    """Loops first, then DFS circuits; returns (edge lists, direction lists) or None on overflow."""
    loops = [e for e, (t, h) in enumerate(zip(tail, head)) if t == h]
    if len(loops) > cap:
        return None
    offsets, ne, nv, nd = _adjacency_csr(n_vertices, tail, head)
    room = cap - len(loops)
    dummy = np.zeros(1, np.int64)
    count, total = _circuit_dfs_nb(offsets, ne, nv, nd, n_vertices, room, False, dummy, dummy, dummy)
    if count > room:
        return None
    out_e = np.empty(total, np.int64)
    out_d = np.empty(total, np.int64)
    out_o = np.zeros(count + 1, np.int64)
    _circuit_dfs_nb(offsets, ne, nv, nd, n_vertices, room, True, out_e, out_d, out_o)
    edges = [[e] for e in loops]
    dirs = [[1] for _ in loops]
    for c in range(count):
        a, b = out_o[c], out_o[c + 1]
        edges.append(out_e[a:b].tolist())
        dirs.append(out_d[a:b].tolist())
    return edges, dirs


def circuits_python(n_vertices, tail, head, cap):
    """Same enumeration as :func:`circuits_numba`, written as a recursive generator."""
    loops = [e for e, (t, h) in enumerate(zip(tail, head)) if t == h]
    if len(loops) > cap:
        return None
    adj = [[] for _ in range(n_vertices)]
    for e, (t, h) in enumerate(zip(tail, head)):
        if t != h:
            adj[t].append((e, h, 1))
            adj[h].append((e, t, -1))
    for lst in adj:
        lst.sort()
    edges = [[e] for e in loops]
    dirs = [[1] for _ in loops]
    on_path = [False] * n_vertices

    def extend(s, u, pe, pd):
        for e, w, d in adj[u]:
            if w == s:
                if pe and pe[0] < e:
                    edges.append(pe + [e])
                    dirs.append(pd + [d])
                    if len(edges) > cap:
                        raise OverflowError
            elif w > s and not on_path[w]:
                on_path[w] = True
                extend(s, w, pe + [e], pd + [d])
                on_path[w] = False

    try:
        for s in range(n_vertices):
            on_path[s] = True
            extend(s, s, [], [])
            on_path[s] = False
    except OverflowError:
        return None
    return edges, dirs


def enumerate_circuits(n_vertices, tail, head, cap):
    if _use_numba:
        return circuits_numba(n_vertices, tail, head, cap)
    return circuits_python(n_vertices, tail, head, cap)


# --------------------------------------------------- DD adjacency test

def _adjacent_pairs(zero, pairs, min_common):
    n_rays = zero.shape[0]
    m = zero.shape[1]
    out = np.zeros(pairs.shape[0], np.bool_)
    common = np.empty(m, np.bool_)
    for p in range(pairs.shape[0]):
        i = pairs[p, 0]
        j = pairs[p, 1]
        c = 0
        for col in range(m):
            common[col] = zero[i, col] and zero[j, col]
            if common[col]:
                c += 1
        if c < min_common:
            continue
        ok = True
        for k in range(n_rays):
            if k == i or k == j:
                continue
            inside = True
            for col in range(m):
                if common[col] and not zero[k, col]:
                    inside = False
                    break
            if inside:
                ok = False
                break
        out[p] = ok
    return out


if NUMBA_AVAILABLE:
    _adjacent_pairs_nb = numba.njit(cache=True)(_adjacent_pairs)
else:  # pragma: no cover
    _adjacent_pairs_nb = None


def adjacent_pairs_numpy(zero, pairs, min_common, chunk=256):
    out = np.zeros(len(pairs), dtype=bool)
    if len(pairs) == 0:
        return out
    notzero = ~zero
    for start in range(0, len(pairs), chunk):
        pp = pairs[start:start + chunk]
        common = zero[pp[:, 0]] & zero[pp[:, 1]]
        enough = common.sum(axis=1) >= min_common
        # blocked[p, k]: ray k's zero set contains the common zero set of pair p
        blocked = ~(common[:, None, :] & notzero[None, :, :]).any(axis=2)
        idx = np.arange(len(pp))
        blocked[idx, pp[:, 0]] = False
        blocked[idx, pp[:, 1]] = False
        out[start:start + chunk] = enough & ~blocked.any(axis=1)
    return out


def adjacent_pairs(zero, pairs, min_common):
    """For each candidate pair (i, j) of rays: are they adjacent in the cone?

    ``zero`` is the boolean ray-by-constraint incidence matrix.  The combinatorial
    test: at least ``min_common`` shared tight constraints and no third ray
    tight on all of them.
    """
    zero = np.ascontiguousarray(zero, dtype=np.bool_)
    pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
    if _use_numba:
        return _adjacent_pairs_nb(zero, pairs, min_common)
    return adjacent_pairs_numpy(zero, pairs, min_common)
