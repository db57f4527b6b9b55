
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from conftest import CORPUS, build, surfaces
from surfnorm.errors import NotACycle
from surfnorm.homology import (
    betti_number,
    boundary_matrices,
    class_of_cycle,
    homology_h1,
    smith_normal_form,
)
from surfnorm.linalg import matmul
from surfnorm.surface import ChainVector, connected_sum


def sympy_h1(S):
    """Independent H1: rank from matrix ranks, torsion from invariant factors of d2."""
    d2, d1 = boundary_matrices(S)
    r1 = sympy.Matrix(d1).rank() if S.n_edges else 0
    M2 = sympy.Matrix(d2)
    r2 = M2.rank()
    b1 = S.n_edges - r1 - r2
    if r2:
        facs = invariant_factors(M2, domain=sympy.ZZ)
        torsion = tuple(int(abs(f)) for f in facs if abs(f) > 1)
    else:
        torsion = ()
    return b1, torsion


def test_torus_boundaries():
    d2, d1 = boundary_matrices(build("a b -a -b"))
    assert d2 == [[0], [0]] and d1 == [[0, 0]]


def test_klein_boundaries():
    d2, d1 = boundary_matrices(build("a b a -b"))
    assert d2 == [[2], [0]] and d1 == [[0, 0]]


def test_rp2_boundaries():
    d2, d1 = boundary_matrices(build("a a"))
    assert d2 == [[2]] and d1 == [[0]]


@pytest.mark.parametrize("word,rank,torsion", [
    ("a b -a -b", 2, ()),
    ("a b a -b", 1, (2,)),
    ("a b -a -b c c", 2, (2,)),
    ("a a", 0, (2,)),
    ("a -a", 0, ()),
])
def test_h1_examples(word, rank, torsion):
    H = homology_h1(build(word))
    assert (H.free_rank, H.torsion) == (rank, torsion)


@pytest.mark.parametrize("k", range(4))
def test_betti_families(k):
    K = connected_sum(k, 2)
    P = connected_sum(k, 1)
    assert homology_h1(K).free_rank == 2 * k + 1 and homology_h1(K).torsion == (2,)
    assert homology_h1(P).free_rank == 2 * k and homology_h1(P).torsion == (2,)


def test_class_examples():
    T = build("a b -a -b")
    assert class_of_cycle(T, T.chain("a")) == [1, 0]
    K = build("a b a -b")
    assert class_of_cycle(K, K.chain("a")) == [0]
    assert class_of_cycle(K, K.chain({"b": 3})) == [3]


def test_class_of_non_cycle():
    from surfnorm.surface import square_grid
    G = square_grid(2, 2)
    with pytest.raises(NotACycle):
        class_of_cycle(G, G.chain("h0_0"))


@given(surfaces(max_labels=5, max_faces=3))
def test_h1_matches_sympy(S):
    H = homology_h1(S)
    assert (H.free_rank, H.torsion) == sympy_h1(S)


@given(surfaces(max_labels=5, max_faces=3))
def test_chain_complex(S):
    d2, d1 = boundary_matrices(S)
    assert all(not any(row) for row in matmul(d1, d2))


@given(surfaces(max_labels=5, max_faces=3))
def test_basis_cycles_and_coordinates(S):
    H = homology_h1(S)
    for i, z in enumerate(H.basis_cycles):
        assert S.is_cycle(z)
        assert H.coordinates(z) == [int(i == j) for j in range(H.free_rank)]
    for z in H.torsion_cycles:
        assert S.is_cycle(z) and not any(H.coordinates(z))
    d2, _ = boundary_matrices(S)
    for f in range(S.n_faces):
        face = ChainVector([d2[e][f] for e in range(S.n_edges)])
        assert not any(H.coordinates(face))


@given(surfaces(max_labels=4, max_faces=2), st.data())
def test_class_is_linear(S, data):
    H = homology_h1(S)
    if not H.free_rank:
        return
    a = data.draw(st.lists(st.integers(-3, 3), min_size=H.free_rank, max_size=H.free_rank))
    b = data.draw(st.lists(st.integers(-3, 3), min_size=H.free_rank, max_size=H.free_rank))
    za = sum((z * k for z, k in zip(H.basis_cycles, a)), ChainVector.zero(S.n_edges))
    zb = sum((z * k for z, k in zip(H.basis_cycles, b)), ChainVector.zero(S.n_edges))
    assert class_of_cycle(S, za + zb * 2) == [x + 2 * y for x, y in zip(a, b)]


@given(surfaces(max_labels=5, max_faces=3))
def test_euler_matches_homology(S):
    H = homology_h1(S)
    if S.is_orientable:
        assert H.torsion == () and S.euler_characteristic == 2 - H.free_rank
    else:
        assert H.torsion == (2,) and S.euler_characteristic == 1 - H.free_rank


def test_corpus_euler_consistency(corpus):
    for S in corpus.values():
        H = homology_h1(S)
        extra = 0 if S.is_orientable else 1
        assert S.euler_characteristic == 2 - H.free_rank - extra
        assert H.torsion == (() if S.is_orientable else (2,))
    assert len(corpus) == len(CORPUS)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_normal_form(rows):
    D, U, Uinv, W = smith_normal_form(rows)
    assert matmul(matmul(U, rows), W) == D
    n = len(rows)
    assert matmul(U, Uinv) == [[int(i == j) for j in range(n)] for i in range(n)]
    diag = [D[i][i] for i in range(min(len(D), 3))]
    for i in range(len(D)):
        for j in range(3):
            if i != j:
                assert D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert abs(sympy.Matrix(W).det()) == 1 and abs(sympy.Matrix(U).det()) == 1
    if nz:
        expected = [abs(int(f)) for f in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if f]
        assert nz == expected


def test_betti_number_helper():
    assert betti_number(build("a b -a -b c d -c -d")) == 4
    assert betti_number(build("a a")) == 0
