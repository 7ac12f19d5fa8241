"""Brute-force reference computations, written independently of the package."""

import itertools
from fractions import Fraction


def solve(M, b):
    """Unique solution of a square rational system, or None (plain Gauss-Jordan)."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(A[r][n] for r in range(n))


def affine_rank(points):
    if not points:
        return -1
    p0 = points[0]
    rows = [[Fraction(a) - b for a, b in zip(p, p0)] for p in points[1:]]
    rank, col, n = 0, 0, len(p0)
    while rows and col < n:
        p = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if p is not None:
            rows[rank], rows[p] = rows[p], rows[rank]
            for r in range(rank + 1, len(rows)):
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
            rank += 1
        col += 1
    return rank


def inside(normals, offsets, x):
    return all(sum(a * b for a, b in zip(nu, x)) + al >= 0 for nu, al in zip(normals, offsets))


def vertices(normals, offsets):
    """Vertices of a bounded polyhedron by trying every n-subset of rows."""
    n = len(normals[0])
    out = set()
    for S in itertools.combinations(range(len(normals)), n):
        x = solve([normals[i] for i in S], [-offsets[i] for i in S])
        if x is not None and inside(normals, offsets, x):
            out.add(x)
    return out


def boxed(normals, offsets, R):
    n = len(normals[0])
    N = list(map(tuple, normals))
    O = [Fraction(a) for a in offsets]
    for k in range(n):
        for s in (1, -1):
            N.append(tuple(s * (i == k) for i in range(n)))
            O.append(Fraction(R))
    return N, O


def facet_hyperplanes(normals, offsets, R=1000):
    """Indices of rows whose hyperplane meets the polyhedron in codimension one.

    The polyhedron is cut by a large box first so that vertex enumeration
    applies; the box does not change which original rows are facets.
    """
    n = len(normals[0])
    N, O = boxed(normals, offsets, R)
    V = vertices(N, O)
    out = []
    for i, (nu, al) in enumerate(zip(normals, offsets)):
        if not any(nu):
            continue
        on = [v for v in V if sum(a * b for a, b in zip(nu, v)) + al == 0]
        if affine_rank(on) == n - 1:
            out.append(i)
    return out


def box_lattice_points(normals, offsets, R):
    n = len(normals[0])
    return sorted(p for p in itertools.product(range(-R, R + 1), repeat=n) if inside(normals, offsets, p))
