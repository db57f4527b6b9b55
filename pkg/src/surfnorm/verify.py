"""Invariant checks shared by ``surfnorm verify`` and the test-suite."""
from __future__ import annotations

import itertools
from fractions import Fraction

from .cover import orientation_cover
from .homology import boundary_matrices, homology_h1
from .linalg import matmul, matvec, nullspace, rank
from .pairing import check_lagrangian, intersection_form
from .stablenorm import (
    MAX_BALL_DIM,
    circuit_decomposition,
    face_lattice,
    faces_with_point_in_relint,
    flat_extension_holds,
    flat_of,
    grid_classes,
    is_centrally_symmetric,
    stable_norm,
    unit_ball,
)


def euler_consistent(S) -> bool:
    H = homology_h1(S)
    if S.is_orientable:
        return H.torsion == () and S.euler_characteristic == 2 - H.free_rank
    return H.torsion == (2,) and S.euler_characteristic == 1 - H.free_rank


def chain_complex_ok(S) -> bool:
    d2, d1 = boundary_matrices(S)
    return all(not any(row) for row in matmul(d1, d2))


def cover_propositions(S) -> dict:
    """Eigenspace dimensions, ker pi_* = E_-1, pi_* injective on E_1, Lagrangian."""
    D = orientation_cover(S)
    n = len(D.I_star)
    b1 = homology_h1(S).free_rank
    sq = matmul(D.I_star, D.I_star)
    out = {
        "involution squares to identity": sq == [[int(i == j) for j in range(n)] for i in range(n)],
        "dim E1 = dim E-1 = b1(cover)/2": 2 * len(D.E1_basis) == n and 2 * len(D.Em1_basis) == n,
        "b1(cover) = 2 b1(base)": n == 2 * b1,
    }
    ker = nullspace([list(r) for r in D.pi_star], n) if b1 else nullspace([], n)
    em1 = [list(v) for v in D.Em1_basis]
    same = len(ker) == len(em1) and (not ker or rank(ker) == rank(ker + em1) == rank(em1))
    out["ker pi_* = E-1"] = same
    images = [matvec(D.pi_star, v) for v in D.E1_basis]
    out["pi_* maps E1 onto H1(base)"] = (rank(images) if images else 0) == b1
    out["E1, E-1 Lagrangian"] = check_lagrangian(D)
    return out


def oracle_equivalence(S, classes) -> bool:
    B = unit_ball(S)
    return all(stable_norm(S, h)[0] == B.gauge(h) for h in classes)


def decomposition_ok(S, h) -> bool:
    value, x = stable_norm(S, h)
    parts = circuit_decomposition(S, x)
    total = [Fraction(0)] * S.n_edges
    cost = Fraction(0)
    for c, w in parts:
        if w <= 0 or any(v not in (0, 1, -1) for v in c):
            return False
        total = [a + w * b for a, b in zip(total, c)]
        cost += w * S.length(c)
    return total == list(x) and cost == value


def provenance_ok(S) -> bool:
    B = unit_ball(S)
    H = homology_h1(S)
    for v, walk in zip(B.vertices, B.provenance):
        chain = S.walk_chain(walk)
        h = H.coordinates(chain)
        w = S.length(chain)
        if tuple(x / w for x in h) != tuple(v) or stable_norm(S, h)[0] != w:
            return False
    return True


def sphere_points(B, limit: int = 40):
    """Unit classes: normalised grid classes plus face barycentres."""
    pts = []
    for h in grid_classes(B.dim, 1):
        g = B.gauge(h)
        pts.append(tuple(x / g for x in h))
    for f in face_lattice(B)[:limit]:
        vs = [B.vertices[i] for i in sorted(f)]
        pts.append(tuple(sum((v[k] for v in vs), Fraction(0)) / len(vs) for k in range(B.dim)))
    return sorted(set(pts))[:limit]


def face_lattice_checks(S) -> dict:
    B = unit_ball(S)
    faces = face_lattice(B)
    unique = True
    for h in sphere_points(B):
        found = faces_with_point_in_relint(B, h, faces)
        flat = frozenset(flat_of(B, h).vertex_indices)
        if found != [flat]:
            unique = False
            break
    return {
        "central symmetry": is_centrally_symmetric(B),
        "flat extension": flat_extension_holds(B, faces),
        "unique face per sphere point": unique,
    }


def cover_isometry(S, count: int = 20) -> bool:
    D = orientation_cover(S)
    E1 = D.E1_basis
    coeff_range = range(-2, 3)
    tested = 0
    for coeffs in itertools.product(coeff_range, repeat=len(E1)):
        if not any(coeffs):
            continue
        ht = [sum((Fraction(c) * v[k] for c, v in zip(coeffs, E1)), Fraction(0))
              for k in range(len(D.I_star))]
        if stable_norm(D.total, ht)[0] != stable_norm(S, matvec(D.pi_star, ht))[0]:
            return False
        tested += 1
        if tested >= count:
            break
    return True


def run_checks(doc, allow_crossings=False) -> list[tuple[str, bool]]:
    from .polyconstruct import PrescriptionProblem, construct, verify_certificate, verify_prescription
    S = doc.surface
    b1 = homology_h1(S).free_rank
    results = [("Euler characteristic matches H1", euler_consistent(S)),
               ("d1 d2 = 0", chain_complex_ok(S))]
    if S.is_orientable:
        M = intersection_form(S)
        n = len(M.matrix)
        results.append(("intersection form skew", all(M.matrix[i][j] == -M.matrix[j][i]
                                                      for i in range(n) for j in range(n))))
        results.append(("intersection form unimodular", abs(M.determinant()) == 1))
    else:
        results += sorted(cover_propositions(S).items())
        if b1:
            results.append(("cover isometry on E1", cover_isometry(S)))
    if 1 <= b1 <= MAX_BALL_DIM:
        grid = grid_classes(b1, 1)
        results.append(("LP norm = ball gauge on grid", oracle_equivalence(S, grid)))
        results.append(("minimizers split into circuits", all(decomposition_ok(S, h) for h in grid)))
        results.append(("vertex provenance", provenance_ok(S)))
        results += sorted(face_lattice_checks(S).items())
    if doc.prescriptions:
        cycles = [S.chain(t) for _, t in doc.prescriptions]
        P = PrescriptionProblem(S, cycles, [r for r, _ in doc.prescriptions], allow_crossings)
        S_star, cert = construct(P)
        results.append(("prescribed ball realised", verify_prescription(S_star, P)))
        results.append(("certificate re-verifies", verify_certificate(cert, P)))
    return results
