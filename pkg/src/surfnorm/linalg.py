"""Small exact linear-algebra toolkit over Q (lists of Fractions)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = list
Matrix = list


def frac_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def matvec(A: Matrix, x: Sequence) -> Vector:
    return [sum((a * b for a, b in zip(row, x) if a and b), 0) for row in A]


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y) if a and b), 0)


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (R, pivot columns)."""
    R = frac_matrix(M)
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def nullspace(M: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : M x = 0}, one vector per free column, in column order."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(M)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(A: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of A x = b (free variables set to zero), or None."""
    if not A:
        return None if any(b) else []
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def primitive(vec: Sequence) -> list[int]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def determinant(A: Matrix) -> Fraction:
    """Exact determinant by fraction-preserving Gaussian elimination."""
    M = frac_matrix(A)
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det
