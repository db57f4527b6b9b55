"""Reweighting a surface so that its unit ball, cut down to the span of some
disjoint simple cycles ``c_1..c_l``, is exactly ``Conv_s([c_i] / r_i)``.

Recipe: pin each ``c_i`` to length ``r_i`` (``normalize_lengths``), then make
every other edge expensive by doubling its weight until, for every sign
vector ``eps`` in {-1, 0, 1}^l, the multicurve ``sum eps_i c_i`` is length
minimizing in its class (``penalize_outside``).  The final polytope
comparison (``verify_prescription``) is always run; certifying the sign
vectors alone is not taken as proof of the ball equality.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidPrescription, NoSpanProgress, NotAClosedWalk, SearchBudgetExceeded
from .homology import class_of_cycle
from .hull import convex_hull, restrict
from .linalg import dot, rank, solve, transpose
from .ratlp import check_certificate, solve_weighted_l1
from .stablenorm import circuits, norm_lp, stable_norm_certified, unit_ball
from .surface import ChainVector, SurfaceComplex, chords_cross, embedded_curves

DEFAULT_MAX_ESCALATIONS = 64
DEFAULT_SEARCH_EDGE_CAP = 12


@dataclass(frozen=True)
class PrescriptionProblem:
    """Disjoint simple cycles with target lengths.

    Cycles must be edge-disjoint and simple, with non-zero, pairwise
    non-proportional classes.  Where two cycles pass through the same vertex
    they must be drawable without crossing; ``allow_crossings`` waives that
    last condition (a torus admits no two disjoint non-proportional curves).
    """

    surface: SurfaceComplex
    cycles: tuple
    targets: tuple
    allow_crossings: bool = False
    classes: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        S = self.surface
        cycles = tuple(S.chain(c) for c in self.cycles)
        targets = tuple(Fraction(r) for r in self.targets)
        object.__setattr__(self, "cycles", cycles)
        object.__setattr__(self, "targets", targets)
        if not cycles or len(cycles) != len(targets):
            raise InvalidPrescription("need as many targets as cycles (at least one)")
        if any(r <= 0 for r in targets):
            raise InvalidPrescription("targets must be positive")
        embeddings = []
        for i, c in enumerate(cycles):
            try:
                emb = list(embedded_curves(S, c))
            except NotAClosedWalk as exc:
                raise InvalidPrescription(f"cycle {i}: {exc}") from None
            if not emb:
                raise InvalidPrescription(f"cycle {i} is not a simple closed curve")
            embeddings.append(emb)
        for i, j in itertools.combinations(range(len(cycles)), 2):
            if set(cycles[i].support()) & set(cycles[j].support()):
                raise InvalidPrescription(f"cycles {i} and {j} share an edge")
        if not self.allow_crossings and not _compatible_embedding(embeddings):
            raise InvalidPrescription("cycles cannot be drawn pairwise disjoint")
        classes = tuple(tuple(class_of_cycle(S, c)) for c in cycles)
        for i, h in enumerate(classes):
            if not any(h):
                raise InvalidPrescription(f"cycle {i} has zero real class")
        for i, j in itertools.combinations(range(len(classes)), 2):
            if rank([list(classes[i]), list(classes[j])]) < 2:
                raise InvalidPrescription(f"classes of cycles {i} and {j} are proportional")
        object.__setattr__(self, "classes", classes)

    @property
    def support(self) -> frozenset:
        return frozenset(e for c in self.cycles for e in c.support())

    def gamma(self, eps: Sequence[int]) -> ChainVector:
        out = ChainVector.zero(self.surface.n_edges)
        for k, c in zip(eps, self.cycles):
            if k:
                out = out + c * k
        return out

    def class_of(self, eps: Sequence[int]) -> tuple:
        b1 = len(self.classes[0])
        return tuple(sum((k * h[d] for k, h in zip(eps, self.classes)), Fraction(0)) for d in range(b1))

    def on(self, S: SurfaceComplex) -> "PrescriptionProblem":
        return PrescriptionProblem(S, self.cycles, self.targets, self.allow_crossings)


def _compatible_embedding(embeddings) -> bool:
    for combo in itertools.product(*embeddings):
        if not any(chords_cross(a.chords, b.chords) for a, b in itertools.combinations(combo, 2)):
            return True
    return False


def sign_vectors(l: int):
    return [eps for eps in itertools.product((-1, 0, 1), repeat=l) if any(eps)]


# ------------------------------------------------------------------ steps

def normalize_lengths(P: PrescriptionProblem) -> SurfaceComplex:
    """Scale the edges of each ``c_i`` by ``r_i / w(c_i)``; nothing else changes."""
    S = P.surface
    w = list(S.weights)
    for c, r in zip(P.cycles, P.targets):
        f = r / S.length(c)
        for e in c.support():
            w[e] = S.weights[e] * f
    return S.with_weights(w)


def scale_outside(S: SurfaceComplex, inside, factor) -> SurfaceComplex:
    return S.with_weights([w if e in inside else w * factor for e, w in enumerate(S.weights)])


@dataclass(frozen=True)
class SignEntry:
    eps: tuple
    value: Fraction  # ||sum eps_i [c_i]||
    length: Fraction  # w(gamma(eps))
    covector: tuple  # supporting covector proving value from below


@dataclass(frozen=True)
class Certificate:
    surface: SurfaceComplex
    factor: Fraction  # multiplier applied to every edge outside the c_i
    rounds: int
    entries: tuple
    history: tuple = ()  # failed rounds: (round, factor, eps, delta, t, required ratio)

    def to_json(self) -> dict:
        return {
            "factor": str(self.factor),
            "rounds": self.rounds,
            "entries": [
                {"eps": list(en.eps), "value": str(en.value), "length": str(en.length),
                 "covector": [str(x) for x in en.covector]}
                for en in self.entries
            ],
            "history": [
                {"round": r, "factor": str(f), "eps": list(eps), "delta": str(d), "t": str(t),
                 "required_ratio": str(q)}
                for r, f, eps, d, t, q in self.history
            ],
        }


def _outside_weight(S: SurfaceComplex, inside, x) -> Fraction:
    return sum((S.weights[e] * abs(c) for e, c in enumerate(x) if c and e not in inside), Fraction(0))


def certify(S: SurfaceComplex, P: PrescriptionProblem):
    """One round: LP solve for every sign vector.  Returns (entries, failures)."""
    inside = P.support
    entries, failures = [], []
    for eps in sign_vectors(len(P.cycles)):
        h = P.class_of(eps)
        cert = stable_norm_certified(S, h)
        length = S.length(P.gamma(eps))
        entries.append(SignEntry(eps, cert.value, length, cert.covector))
        if cert.value != length:
            delta = length - cert.value
            t = _outside_weight(S, inside, cert.minimizer)
            failures.append((eps, delta, t))
    return entries, failures


def penalize_outside(S: SurfaceComplex, P: PrescriptionProblem,
                     max_escalations: int = DEFAULT_MAX_ESCALATIONS) -> tuple[SurfaceComplex, Certificate]:
    """Double the outside weights until every ``gamma(eps)`` is minimizing."""
    inside = P.support
    history = []
    for k in range(max_escalations + 1):
        factor = Fraction(2) ** k
        Sk = scale_outside(S, inside, factor)
        entries, failures = certify(Sk, P)
        if not failures:
            return Sk, Certificate(Sk, factor, k, tuple(entries), tuple(history))
        for eps, delta, t in failures:
            ratio = 1 + delta / t if t else None
            history.append((k, factor, eps, delta, t, ratio))
    raise NoSpanProgress(
        f"no certificate after {max_escalations} doublings of the outside weights", history)


def construct(P: PrescriptionProblem, max_escalations: int = DEFAULT_MAX_ESCALATIONS):
    return penalize_outside(normalize_lengths(P), P, max_escalations)


# ----------------------------------------------------------- verification

def verify_certificate(cert: Certificate, P: PrescriptionProblem) -> bool:
    """Re-check every entry without trusting the stored numbers.

    Each covector is checked against every elementary circuit (dual
    feasibility, independent of the simplex) and against ``gamma(eps)``;
    each value is re-derived by a fresh LP solve with an exact duality check.
    """
    S = cert.surface
    if any(S.length(c) != r for c, r in zip(P.cycles, P.targets)):
        return False
    circs = circuits(S)
    for en in cert.entries:
        h = P.class_of(en.eps)
        gamma = P.gamma(en.eps)
        if S.length(gamma) != en.length or en.value != en.length:
            return False
        if dot(en.covector, h) != en.value:
            return False
        for c in circs:
            if abs(dot(en.covector, c.homology_class)) > c.weight:
                return False
        lp = norm_lp(S, h)
        sol = solve_weighted_l1(lp)
        if not check_certificate(lp, sol) or sol.value != en.value:
            return False
    return True


def prescribed_polytope(P: PrescriptionProblem, basis):
    """``Conv_s([c_i] / r_i)`` written in coordinates of ``basis``."""
    Bt = transpose([list(b) for b in basis])
    pts = []
    for h, r in zip(P.classes, P.targets):
        coords = solve(Bt, [x / r for x in h])
        pts.append(tuple(coords))
        pts.append(tuple(-x for x in coords))
    return convex_hull(pts)


def span_basis(P: PrescriptionProblem) -> list:
    """A basis of span{[c_i]} chosen among the classes themselves."""
    basis = []
    for h in P.classes:
        if rank(basis + [list(h)]) > len(basis):
            basis.append(list(h))
    return basis


def verify_prescription(S_star: SurfaceComplex, P: PrescriptionProblem) -> bool:
    """Exact comparison of ball-restricted-to-span with Conv_s([c_i]/r_i)."""
    P = P.on(S_star)
    basis = span_basis(P)
    got = sorted(restrict(unit_ball(S_star).polytope, basis).vertices)
    want = sorted(prescribed_polytope(P, basis).vertices)
    if got != want:
        return False
    return all(abs(S_star.length(c) - r) == 0 for c, r in zip(P.cycles, P.targets))


# ------------------------------------------------ disjoint curve systems

@dataclass(frozen=True)
class CurveOption:
    chain: ChainVector
    homology_class: tuple
    chords: frozenset


def simple_curves(S: SurfaceComplex, edge_cap: int = DEFAULT_SEARCH_EDGE_CAP) -> list[CurveOption]:
    """Every simple closed curve in the 1-skeleton with non-zero real class, up to sign,
    one entry per distinct embedding."""
    if S.n_edges > edge_cap:
        raise SearchBudgetExceeded(f"{S.n_edges} edges exceed the exhaustive-search cap {edge_cap}")
    out = []
    for coeffs in itertools.product((0, 1, -1), repeat=S.n_edges):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1:  # one representative per sign class
            continue
        chain = ChainVector(coeffs)
        if not S.is_cycle(chain):
            continue
        h = tuple(class_of_cycle(S, chain))
        if not any(h):
            continue
        seen = set()
        for emb in embedded_curves(S, chain):
            if emb.chords not in seen:
                seen.add(emb.chords)
                out.append(CurveOption(chain, h, emb.chords))
    return out


def _compatible(a: CurveOption, b: CurveOption) -> bool:
    if set(a.chain.support()) & set(b.chain.support()):
        return False
    if chords_cross(a.chords, b.chords):
        return False
    return rank([list(a.homology_class), list(b.homology_class)]) == 2


def max_disjoint_systems(S: SurfaceComplex, edge_cap: int = DEFAULT_SEARCH_EDGE_CAP,
                         return_system: bool = False):
    """Largest family of disjoint simple curves with pairwise non-proportional classes."""
    opts = simple_curves(S, edge_cap)
    n = len(opts)
    adj = [{j for j in range(n) if j != i and _compatible(opts[i], opts[j])} for i in range(n)]
    best: list[int] = []

    def grow(clique, cand):
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        if len(clique) + len(cand) <= len(best):
            return
        for v in sorted(cand):
            grow(clique + [v], {u for u in cand if u > v} & adj[v])

    grow([], set(range(n)))
    if return_system:
        return len(best), [opts[i] for i in best]
    return len(best)
