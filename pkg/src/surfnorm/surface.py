"""Closed surfaces given as polygons glued along labelled, weighted edges.

A face is a cyclic word of tokens ``(label, exponent)``.  Token ``(e, +1)`` at
position ``i`` runs from corner ``i`` to corner ``i + 1`` of its polygon;
``(e, -1)`` runs the other way.  Vertices, the cyclic order of edge-ends around
each vertex and orientability are derived from the corners.

Edge-ends are encoded as integers: ``2*e`` is the tail of edge ``e`` and
``2*e + 1`` its head.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    Disconnected,
    DuplicateLabelCount,
    NonPositiveWeight,
    NotAClosedWalk,
    SearchBudgetExceeded,
    SurfaceSyntaxError,
)

Token = tuple  # (label, +1 | -1)
Walk = tuple  # ((edge index, +1 | -1), ...)

LABEL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.']*$")

RESOLUTION_BUDGET = 200_000


@dataclass(frozen=True)
class ChainVector:
    """Rational 1-chain; ``coeffs[i]`` multiplies the i-th edge of its surface."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "ChainVector":
        return cls((0,) * n)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "ChainVector") -> "ChainVector":
        return ChainVector(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "ChainVector") -> "ChainVector":
        return ChainVector(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "ChainVector":
        return ChainVector(-a for a in self.coeffs)

    def __mul__(self, k) -> "ChainVector":
        return ChainVector(a * k for a in self.coeffs)

    __rmul__ = __mul__

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class SurfaceComplex:
    """A validated closed surface complex.  Immutable; derived data is cached."""

    faces: tuple
    labels: tuple
    weights: tuple
    name: str = "surface"

    # derived
    occurrences: tuple = field(init=False, repr=False, compare=False)
    tail: tuple = field(init=False, repr=False, compare=False)
    head: tuple = field(init=False, repr=False, compare=False)
    n_vertices: int = field(init=False, repr=False, compare=False)
    links: tuple = field(init=False, repr=False, compare=False)
    end_position: tuple = field(init=False, repr=False, compare=False)
    orientation: tuple | None = field(init=False, repr=False, compare=False)
    rotation: tuple | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        faces = tuple(tuple((str(l), int(s)) for l, s in word) for word in self.faces)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        self._validate()
        self._derive()

    # ------------------------------------------------------------------ build
    @classmethod
    def build(cls, faces: Iterable, weights: Mapping | None = None, name: str = "surface"):
        """Build from words; tokens may be ``(label, sign)`` pairs or strings like ``"-a"``."""
        words = []
        labels: list[str] = []
        for word in faces:
            toks = []
            if isinstance(word, str):
                word = word.split()
            for tok in word:
                lab, sign = _token(tok)
                toks.append((lab, sign))
                if lab not in labels:
                    labels.append(lab)
            words.append(tuple(toks))
        weights = dict(weights or {})
        unknown = set(weights) - set(labels)
        if unknown:
            raise SurfaceSyntaxError(f"weight given for unknown label(s) {sorted(unknown)}")
        return cls(tuple(words), tuple(labels), tuple(Fraction(weights.get(l, 1)) for l in labels), name)

    def with_weights(self, weights: Sequence) -> "SurfaceComplex":
        return SurfaceComplex(self.faces, self.labels, tuple(weights), self.name)

    # ------------------------------------------------------------ validation
    def _validate(self):
        if not self.faces or any(len(w) == 0 for w in self.faces):
            raise SurfaceSyntaxError("a surface needs at least one non-empty face")
        if len(set(self.labels)) != len(self.labels):
            raise SurfaceSyntaxError("duplicate label in label list")
        if len(self.weights) != len(self.labels):
            raise SurfaceSyntaxError("one weight per label is required")
        counts = {l: 0 for l in self.labels}
        for word in self.faces:
            for lab, sign in word:
                if lab not in counts:
                    raise SurfaceSyntaxError(f"label {lab!r} not declared")
                if sign not in (1, -1):
                    raise SurfaceSyntaxError(f"bad exponent {sign} on {lab!r}")
                counts[lab] += 1
        bad = sorted(l for l, c in counts.items() if c != 2)
        if bad:
            raise DuplicateLabelCount(
                "labels must occur exactly twice: "
                + ", ".join(f"{l} ({counts[l]}x)" for l in bad)
            )
        for lab, w in zip(self.labels, self.weights):
            if w <= 0:
                raise NonPositiveWeight(f"weight of {lab!r} is {w}")

    # ------------------------------------------------------------ derivation
    def _derive(self):
        index = {l: i for i, l in enumerate(self.labels)}
        E = len(self.labels)
        occ = [[] for _ in range(E)]
        for f, word in enumerate(self.faces):
            for i, (lab, sign) in enumerate(word):
                occ[index[lab]].append((f, i, sign))
        object.__setattr__(self, "occurrences", tuple(tuple(o) for o in occ))

        # connectivity of the face adjacency graph
        parent = list(range(len(self.faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (f1, _, _), (f2, _, _) in occ:
            parent[find(f1)] = find(f2)
        if len({find(f) for f in range(len(self.faces))}) != 1:
            raise Disconnected("faces do not form a connected complex")

        # corners -> vertices
        corner_id = {}
        for f, word in enumerate(self.faces):
            for i in range(len(word)):
                corner_id[(f, i)] = len(corner_id)
        cparent = list(range(len(corner_id)))

        def cfind(x):
            while cparent[x] != x:
                cparent[x] = cparent[cparent[x]]
                x = cparent[x]
            return x

        def ends_of(f, i, sign):
            n = len(self.faces[f])
            a, b = corner_id[(f, i)], corner_id[(f, (i + 1) % n)]
            return (a, b) if sign == 1 else (b, a)

        for e in range(E):
            (t1, h1), (t2, h2) = (ends_of(*o) for o in occ[e])
            cparent[cfind(t1)] = cfind(t2)
            cparent[cfind(h1)] = cfind(h2)
        vid = {}
        corner_vertex = {}
        for key, c in corner_id.items():
            root = cfind(c)
            if root not in vid:
                vid[root] = len(vid)
            corner_vertex[key] = vid[root]
        tail, head = [], []
        for e in range(E):
            t, h = ends_of(*occ[e][0])
            tail.append(vid[cfind(t)])
            head.append(vid[cfind(h)])
        object.__setattr__(self, "tail", tuple(tail))
        object.__setattr__(self, "head", tuple(head))
        object.__setattr__(self, "n_vertices", len(vid))

        # links: every corner joins the start-end of its outgoing token to the
        # finish-end of its incoming token; each end lies in exactly two corners
        inc = [[] for _ in range(2 * E)]
        for f, word in enumerate(self.faces):
            n = len(word)
            for i in range(n):
                x = _start_end(index, word[i])
                y = _finish_end(index, word[i - 1])
                c = corner_id[(f, i)]
                inc[x].append((c, y))
                inc[y].append((c, x))
        links: list[list[int]] = [[] for _ in range(len(vid))]
        seen = [False] * (2 * E)
        for h0 in range(2 * E):
            if seen[h0]:
                continue
            v = tail[h0 // 2] if h0 % 2 == 0 else head[h0 // 2]
            order = [h0]
            seen[h0] = True
            corner, cur = inc[h0][0]
            while cur != h0:
                order.append(cur)
                seen[cur] = True
                a, b = inc[cur]
                corner, cur = b if a[0] == corner else a
            links[v] = order
        pos = [None] * (2 * E)
        for v, order in enumerate(links):
            for k, h in enumerate(order):
                pos[h] = (v, k)
        object.__setattr__(self, "links", tuple(tuple(l) for l in links))
        object.__setattr__(self, "end_position", tuple(pos))

        # orientation: first face keeps its word; the rest is forced
        signs = [0] * len(self.faces)
        signs[0] = 1
        orientable = True
        queue = deque([0])
        while queue and orientable:
            f = queue.popleft()
            for lab, _ in self.faces[f]:
                (f1, _, s1), (f2, _, s2) = occ[index[lab]]
                for fa, sa, fb, sb in ((f1, s1, f2, s2), (f2, s2, f1, s1)):
                    if fa != f:
                        continue
                    want = -signs[fa] * sa * sb
                    if signs[fb] == 0:
                        signs[fb] = want
                        queue.append(fb)
                    elif signs[fb] != want:
                        orientable = False
        if not orientable:
            object.__setattr__(self, "orientation", None)
            object.__setattr__(self, "rotation", None)
            return
        object.__setattr__(self, "orientation", tuple(signs))
        nxt = [None] * (2 * E)
        for f, word in enumerate(self.faces):
            w = word if signs[f] == 1 else tuple((l, -s) for l, s in reversed(word))
            for i in range(len(w)):
                nxt[_start_end(index, w[i])] = _finish_end(index, w[i - 1])
        rot = []
        for v in range(len(vid)):
            h0 = min(links[v])
            order = [h0]
            h = nxt[h0]
            while h != h0:
                order.append(h)
                h = nxt[h]
            rot.append(tuple(order))
        object.__setattr__(self, "rotation", tuple(rot))

    # -------------------------------------------------------------- queries
    @property
    def n_edges(self) -> int:
        return len(self.labels)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def is_orientable(self) -> bool:
        return self.orientation is not None

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown edge label {label!r}") from None

    def end_vertex(self, end: int) -> int:
        e = end // 2
        return self.tail[e] if end % 2 == 0 else self.head[e]

    def chain(self, data) -> ChainVector:
        """Chain from ``{label: coeff}``, a token string ``"a -b"`` or a token list."""
        coeffs = [Fraction(0)] * self.n_edges
        if isinstance(data, ChainVector):
            return data
        if isinstance(data, Mapping):
            for lab, c in data.items():
                coeffs[self.index(lab)] += Fraction(c)
        else:
            if isinstance(data, str):
                data = data.replace(",", " ").split()
            for tok in data:
                lab, sign = _token(tok)
                coeffs[self.index(lab)] += sign
        return ChainVector(coeffs)

    def walk_chain(self, walk: Walk) -> ChainVector:
        coeffs = [Fraction(0)] * self.n_edges
        for e, d in walk:
            coeffs[e] += d
        return ChainVector(coeffs)

    def chain_tokens(self, chain: ChainVector) -> list[str]:
        out = []
        for lab, c in zip(self.labels, chain):
            if c == 1:
                out.append(lab)
            elif c == -1:
                out.append("-" + lab)
            elif c:
                out.append(f"{c}*{lab}")
        return out

    def boundary(self, chain: ChainVector) -> list[Fraction]:
        out = [Fraction(0)] * self.n_vertices
        for e, c in enumerate(chain):
            if c:
                out[self.head[e]] += c
                out[self.tail[e]] -= c
        return out

    def is_cycle(self, chain: ChainVector) -> bool:
        return not any(self.boundary(chain))

    def length(self, chain: ChainVector) -> Fraction:
        """Weighted length sum_e w_e |x_e|."""
        return sum((w * abs(c) for w, c in zip(self.weights, chain) if c), Fraction(0))

    def oriented_faces(self) -> tuple:
        """Face words after applying the canonical orientation (orientable only)."""
        if self.orientation is None:
            raise ValueError("surface is not orientable")
        return tuple(
            w if s == 1 else tuple((l, -t) for l, t in reversed(w))
            for w, s in zip(self.faces, self.orientation)
        )


def _token(tok) -> Token:
    if isinstance(tok, tuple):
        lab, sign = tok
        return str(lab), int(sign)
    tok = str(tok)
    sign = 1
    if tok.startswith("-"):
        sign, tok = -1, tok[1:]
    elif tok.startswith("+"):
        tok = tok[1:]
    if not LABEL_RE.match(tok):
        raise SurfaceSyntaxError(f"bad edge label {tok!r}")
    return tok, sign


def _start_end(index, tok) -> int:
    e = index[tok[0]]
    return 2 * e if tok[1] == 1 else 2 * e + 1


def _finish_end(index, tok) -> int:
    e = index[tok[0]]
    return 2 * e + 1 if tok[1] == 1 else 2 * e


# ---------------------------------------------------------------- operations

def euler_characteristic(S: SurfaceComplex) -> int:
    return S.euler_characteristic


def is_orientable(S: SurfaceComplex) -> bool:
    return S.is_orientable


@dataclass(frozen=True)
class EmbeddedCurve:
    """A closed walk together with the crossing-free resolution that embeds it.

    ``chords`` holds ``(vertex, p, q)`` with ``p < q`` positions in the vertex
    link, one per passage of the curve through the vertex.
    """

    chain: ChainVector
    walk: Walk
    chords: frozenset


def _walk_check(S: SurfaceComplex, chain: ChainVector):
    if chain.is_zero():
        raise NotAClosedWalk("empty walk")
    if not S.is_cycle(chain):
        raise NotAClosedWalk("chain has non-zero boundary")


def _noncrossing_matchings(seq):
    """Non-crossing in->out matchings of ``seq`` = [(pos, end, is_in), ...]."""
    if not seq:
        yield []
        return
    first = seq[0]
    balance = 0
    for j in range(1, len(seq)):
        if seq[j][2] != first[2] and balance == 0:
            for inner in _noncrossing_matchings(seq[1:j]):
                for outer in _noncrossing_matchings(seq[j + 1:]):
                    yield [(first, seq[j])] + inner + outer
        balance += 1 if seq[j][2] else -1


def embedded_curves(S: SurfaceComplex, chain: ChainVector, budget: int = RESOLUTION_BUDGET
                    ) -> Iterator[EmbeddedCurve]:
    """All embeddings of ``chain`` as a single simple closed curve.

    The chain must have coefficients in {-1, 0, 1}; otherwise nothing is yielded.
    """
    _walk_check(S, chain)
    if any(c not in (0, 1, -1) for c in chain):
        return
    per_vertex = {}
    for e in chain.support():
        c = chain[e]
        for end in (2 * e, 2 * e + 1):
            v, p = S.end_position[end]
            # an end is "in" when the walk arrives through it
            is_in = (end % 2 == 1) == (c == 1)
            per_vertex.setdefault(v, []).append((p, end, is_in))
    options = []
    for v in sorted(per_vertex):
        seq = sorted(per_vertex[v])
        options.append([(v, m) for m in _noncrossing_matchings(seq)])
    support = chain.support()
    start = (support[0], int(chain[support[0]]))
    tried = 0
    for combo in itertools.product(*options):
        tried += 1
        if tried > budget:
            raise SearchBudgetExceeded("too many vertex resolutions")
        follow = {}
        chords = []
        for v, matching in combo:
            for a, b in matching:
                inn, out = (a, b) if a[2] else (b, a)
                follow[inn[1]] = out[1]
                chords.append((v, min(a[0], b[0]), max(a[0], b[0])))
        walk = []
        e, d = start
        while True:
            walk.append((e, d))
            arrive = 2 * e + 1 if d == 1 else 2 * e
            out = follow[arrive]
            e, d = out // 2, (1 if out % 2 == 0 else -1)
            if (e, d) == start:
                break
        if len(walk) == len(support):
            yield EmbeddedCurve(chain, tuple(walk), frozenset(chords))


def embedded_walk(S: SurfaceComplex, chain: ChainVector) -> Walk | None:
    for curve in embedded_curves(S, chain):
        return curve.walk
    return None


def is_simple_on_surface(S: SurfaceComplex, chain: ChainVector) -> bool:
    """True iff the closed walk can be drawn on S as one simple closed curve."""
    return embedded_walk(S, chain) is not None


def chords_cross(c1: frozenset, c2: frozenset) -> bool:
    for v, p, q in c1:
        for w, r, s in c2:
            if v == w and (p < r < q) != (p < s < q):
                return True
    return False


# ---------------------------------------------------------------- families

def connected_sum_word(genus: int, crosscaps: int = 0) -> list[str]:
    """One-face word for the sum of ``genus`` tori and ``crosscaps`` projective planes."""
    toks: list[str] = []
    for i in range(1, genus + 1):
        toks += [f"a{i}", f"b{i}", f"-a{i}", f"-b{i}"]
    for j in range(1, crosscaps + 1):
        toks += [f"c{j}", f"c{j}"]
    if not toks:
        toks = ["s", "-s"]
    return toks


def connected_sum(genus: int, crosscaps: int = 0, name: str | None = None) -> SurfaceComplex:
    return SurfaceComplex.build([connected_sum_word(genus, crosscaps)],
                                name=name or f"sigma{genus}_x{crosscaps}")


def square_grid(n: int, m: int, klein: bool = False, name: str | None = None) -> SurfaceComplex:
    """``n x m`` square grid on the torus, or on the Klein bottle when ``klein``
    (the top row is glued back to the bottom with a horizontal flip)."""
    if n < 1 or m < 1:
        raise ValueError("grid needs n, m >= 1")
    words = []
    for j in range(m):
        for i in range(n):
            if klein and j == m - 1:
                top = f"h{(-i - 1) % n}_0"  # flipped: runs forward along the bottom row
            else:
                top = f"-h{i}_{(j + 1) % m}"
            words.append([f"h{i}_{j}", f"v{(i + 1) % n}_{j}", top, f"-v{i}_{j}"])
    kind = "klein" if klein else "torus"
    return SurfaceComplex.build(words, name=name or f"{kind}_grid_{n}x{m}")
