import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from surfnorm.hull import DegenerateHull, convex_hull, face_dimension, polar, restrict
from surfnorm.linalg import rank, solve


def brute_facets(points):
    """Every hyperplane c.x = 1 spanned by d points with all points on the <= side."""
    d = len(points[0])
    found = set()
    for combo in itertools.combinations(points, d):
        if rank([list(p) for p in combo]) < d:
            continue
        c = solve([list(p) for p in combo], [1] * d)
        if c is None:
            continue
        if all(sum(a * b for a, b in zip(c, p)) <= 1 for p in points):
            found.add(tuple(c))
    return found


def test_square():
    P = convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1), (Fraction(1, 4), Fraction(1, 4))])
    assert set(P.vertices) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert set(P.facets) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert P.gauge((2, 3)) == 5
    assert P.contains((Fraction(1, 2), Fraction(1, 2)))
    assert not P.contains((1, 1))
    assert sorted(P.tight_facets((1, 0))) == sorted(
        k for k, c in enumerate(P.facets) if c[0] == 1)


def test_segment():
    P = convex_hull([(Fraction(3, 2),), (Fraction(-3, 2),)])
    assert set(P.facets) == {(Fraction(2, 3),), (Fraction(-2, 3),)}


def test_octahedron():
    pts = [tuple(s * int(i == k) for i in range(3)) for k in range(3) for s in (1, -1)]
    P = convex_hull(pts)
    assert len(P.facets) == 8 and all(len(inc) == 3 for inc in P.incidence)
    Q = polar(P)
    assert set(Q.vertices) == set(P.facets) and len(Q.facets) == 6


def test_degenerate():
    with pytest.raises(DegenerateHull):
        convex_hull([(1, 0), (-1, 0)])
    with pytest.raises(DegenerateHull):
        convex_hull([(1, 1), (2, 1), (1, 2)])


def test_restrict_diagonal():
    cube = convex_hull([tuple(v) for v in itertools.product((1, -1), repeat=3)])
    line = restrict(cube, [(1, 1, 1)])
    assert set(line.vertices) == {(1,), (-1,)}
    plane = restrict(cube, [(1, 0, 0), (0, 1, 0)])
    assert set(plane.vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_face_dimension():
    assert face_dimension([(1, 0)]) == 0
    assert face_dimension([(1, 0), (0, 1)]) == 1


coord = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def symmetric_clouds(draw, d):
    base = [tuple(int(i == k) for i in range(d)) for k in range(d)]
    extra = draw(st.lists(st.tuples(*[coord] * d), min_size=0, max_size=5))
    pts = {tuple(Fraction(x) for x in p) for p in base + extra if any(p)}
    return sorted(pts | {tuple(-x for x in p) for p in pts})


@given(st.integers(2, 3).flatmap(symmetric_clouds))
def test_against_brute_force(points):
    P = convex_hull(points)
    assert set(P.facets) == brute_facets(points)
    assert all(P.contains(p) for p in points)
    for k, inc in enumerate(P.incidence):
        assert face_dimension([P.vertices[i] for i in inc]) == P.dim - 1
    # double polar is the identity
    Q = polar(P)
    assert set(convex_hull(list(Q.vertices)).facets) == set(P.vertices)


@given(symmetric_clouds(3))
def test_restrict_agrees_with_gauge(points):
    P = convex_hull(points)
    R = restrict(P, [(1, 0, 0), (0, 1, 1)])
    for a, b in itertools.product(range(-2, 3), repeat=2):
        assert R.gauge((a, b)) == P.gauge((a, b, b))
