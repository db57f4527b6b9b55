import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import build, surfaces
from surfnorm.cover import eigenspaces, orientation_cover, pushforward
from surfnorm.errors import (
    CircuitBudgetExceeded,
    ClassDimensionMismatch,
    DimensionTooLarge,
    NotOnSphere,
    TrivialHomology,
)
from surfnorm.homology import homology_h1
from surfnorm.linalg import dot
from surfnorm.stablenorm import (
    ball_svg,
    ball_to_json,
    circuit_decomposition,
    circuits,
    dual_norm,
    face_lattice,
    faces_with_point_in_relint,
    flat_extension_holds,
    flat_of,
    grid_classes,
    is_centrally_symmetric,
    minimizing_cycles,
    stable_norm,
    stable_norm_certified,
    unit_ball,
)
from surfnorm.surface import connected_sum, square_grid

F = Fraction
TORUS = build("a b -a -b")


def float_norm(S, h):
    """Independent floating-point oracle: the same program through HiGHS."""
    opt = pytest.importorskip("scipy.optimize")
    from surfnorm.homology import boundary_matrices
    _, d1 = boundary_matrices(S)
    K = homology_h1(S).coordinate_map
    rows = [list(r) for r in d1] + [list(r) for r in K]
    rhs = [0] * S.n_vertices + [float(x) for x in h]
    A = [[float(v) for v in r] + [-float(v) for v in r] for r in rows]
    w = [float(x) for x in S.weights] * 2
    res = opt.linprog(w, A_eq=A, b_eq=rhs, bounds=[(0, None)] * len(w), method="highs")
    assert res.status == 0
    return res.fun


# ------------------------------------------------------------------ examples

def test_torus_examples():
    v, x = stable_norm(TORUS, (1, 0))
    assert v == 1 and TORUS.chain_tokens(x) == ["a"]
    assert stable_norm(TORUS, (2, 3))[0] == 5
    v, x = stable_norm(TORUS, (0, 0))
    assert v == 0 and not any(x)


def test_minimizing_cycles_examples():
    parts = minimizing_cycles(TORUS, (1, 1))
    assert sum(w * TORUS.length(c) for c, w in parts) == 2
    assert all(w > 0 for _, w in parts)
    assert [(TORUS.chain_tokens(c), w) for c, w in minimizing_cycles(TORUS, (1, 0))] == [(["a"], 1)]
    assert minimizing_cycles(TORUS, (0, 0)) == []


def test_ball_examples(corpus):
    assert set(unit_ball(TORUS).vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert set(unit_ball(corpus["klein"]).vertices) == {(1,), (-1,)}
    Bw = unit_ball(corpus["torus_weighted"])
    assert set(Bw.vertices) == {(F(3, 2), 0), (F(-3, 2), 0), (0, F(4, 5)), (0, F(-4, 5))}


def test_dual_examples():
    assert dual_norm(TORUS, (1, 0)) == 1
    assert dual_norm(TORUS, (1, 1)) == 1
    assert dual_norm(TORUS, (0, 0)) == 0
    with pytest.raises(ClassDimensionMismatch):
        dual_norm(TORUS, (1,))


def test_flat_examples(corpus):
    assert flat_of(TORUS, (1, 0)).dimension == 0
    f = flat_of(TORUS, (F(1, 2), F(1, 2)))
    assert f.dimension == 1 and set(f.vertices) == {(1, 0), (0, 1)}
    assert f.covector == (1, 1)
    assert flat_of(corpus["klein"], (1,)).dimension == 0
    with pytest.raises(NotOnSphere):
        flat_of(TORUS, (1, 1))


def test_errors(corpus):
    with pytest.raises(ClassDimensionMismatch):
        stable_norm(TORUS, (1, 2, 3))
    with pytest.raises(TrivialHomology):
        unit_ball(corpus["sphere"])
    with pytest.raises(TrivialHomology):
        unit_ball(corpus["rp2"])
    with pytest.raises(DimensionTooLarge):
        unit_ball(connected_sum(4))
    with pytest.raises(CircuitBudgetExceeded):
        unit_ball(square_grid(3, 3), cap=10)


def test_circuit_count_torus():
    assert len(circuits(TORUS)) == 2


# ------------------------------------------------------------- properties

@given(surfaces(max_labels=4, max_faces=3), st.data())
def test_lp_matches_hull_and_float(S, data):
    b1 = homology_h1(S).free_rank
    if b1 == 0:
        return
    h = data.draw(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=b1, max_size=b1))
    cert = stable_norm_certified(S, h)
    if b1 <= 6:
        assert cert.value == unit_ball(S).gauge(h)
    assert abs(float(cert.value) - float_norm(S, h)) < 1e-7
    # minimizer really is a cycle in class h with the claimed cost
    assert S.is_cycle(cert.minimizer)
    assert list(homology_h1(S).coordinates(cert.minimizer)) == [F(x) for x in h]
    assert S.length(cert.minimizer) == cert.value
    # supporting covector: attains the value with dual norm <= 1
    assert dot(cert.covector, h) == cert.value
    if b1 <= 6:
        assert dual_norm(S, cert.covector) <= 1


@given(surfaces(max_labels=4, max_faces=3), st.data())
def test_norm_axioms(S, data):
    b1 = homology_h1(S).free_rank
    if b1 == 0:
        return
    cls = st.lists(st.fractions(-2, 2, max_denominator=3), min_size=b1, max_size=b1)
    g, k = data.draw(cls), data.draw(cls)
    lam = data.draw(st.fractions(-3, 3, max_denominator=4))
    n = lambda v: stable_norm(S, v)[0]  # noqa: E731
    assert n([lam * x for x in g]) == abs(lam) * n(g)
    assert n([a + b for a, b in zip(g, k)]) <= n(g) + n(k)
    assert n([-x for x in g]) == n(g)


@given(surfaces(max_labels=4, max_faces=3), st.data())
def test_decomposition_reassembles(S, data):
    b1 = homology_h1(S).free_rank
    if b1 == 0:
        return
    h = data.draw(st.lists(st.fractions(-2, 2, max_denominator=2), min_size=b1, max_size=b1))
    value, x = stable_norm(S, h)
    parts = circuit_decomposition(S, x)
    total = [F(0)] * S.n_edges
    for c, w in parts:
        assert w > 0 and S.is_cycle(c) and all(v in (0, 1, -1) for v in c)
        total = [a + w * b for a, b in zip(total, c)]
    assert total == list(x)
    assert sum((w * S.length(c) for c, w in parts), F(0)) == value


def test_dual_norm_duality(corpus):
    # ||h|| = max <c,h> over the facets (dual norm exactly 1)
    for name in ("torus_weighted", "dyck_weighted", "klein_grid"):
        S = corpus[name]
        B = unit_ball(S)
        assert all(dual_norm(B, c) == 1 for c in B.facets)
        for h in grid_classes(B.dim, 1):
            assert stable_norm(S, h)[0] == max(dot(c, h) for c in B.facets)


def test_provenance(corpus):
    for name in ("torus_grid", "dyck_weighted", "sigma1_klein"):
        S = corpus[name]
        B = unit_ball(S)
        H = homology_h1(S)
        for v, walk in zip(B.vertices, B.provenance):
            chain = S.walk_chain(walk)
            assert stable_norm(S, H.coordinates(chain))[0] == S.length(chain)
            assert tuple(x / S.length(chain) for x in H.coordinates(chain)) == v


def test_cover_isometry(corpus):
    for name in ("klein", "dyck_weighted"):
        S = corpus[name]
        D = orientation_cover(S)
        E1, _ = eigenspaces(D)
        for k in range(len(E1)):
            for s in (1, 2, F(1, 3)):
                ht = [s * x for x in E1[k]]
                assert stable_norm(D.total, ht)[0] == stable_norm(S, pushforward(D, ht))[0]


def test_face_lattice(corpus):
    for name in ("torus", "dyck", "torus_grid"):
        B = unit_ball(corpus[name])
        faces = face_lattice(B)
        assert is_centrally_symmetric(B)
        assert flat_extension_holds(B, faces)
        for v in range(len(B.vertices)):
            assert frozenset([v]) in faces
        h = tuple(F(x + y, 2) for x, y in zip(B.vertices[0], B.vertices[B.incidence[0][1]]))
        assert faces_with_point_in_relint(B, h, faces) == [frozenset(flat_of(B, h).vertex_indices)]


# ------------------------------------------------------------------ output

def test_ball_json(corpus):
    S = corpus["torus_weighted"]
    data = ball_to_json(S, unit_ball(S))
    assert set(data) == {"dim", "vertices", "facets", "incidence", "provenance"}
    assert data["dim"] == 2
    assert sorted(data["vertices"]) == sorted([["3/2", "0"], ["-3/2", "0"], ["0", "4/5"], ["0", "-4/5"]])
    assert all(isinstance(t, str) for p in data["provenance"] for t in p)
    json.dumps(data)


def test_ball_svg(corpus):
    for name in ("klein", "torus", "dyck"):
        svg = ball_svg(unit_ball(corpus[name]))
        assert svg.startswith("<svg") and "<polygon" in svg
    B = unit_ball(corpus["genus2"])
    assert "<polygon" in ball_svg(B, axes=(0, 2))
    with pytest.raises(ValueError):
        ball_svg(unit_ball(corpus["dyck"]), axes=(0, 2))
