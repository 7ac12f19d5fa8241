"""Exact integer and rational linear algebra.

Matrices are plain tuples of tuples of Python ints (row-major), vectors are
tuples of ints or :class:`fractions.Fraction`.  Everything here is exact;
floating point never enters.

The central routine is :func:`smith_normal_form`, from which cokernels,
kernels and lifts of classes are derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

IntMatrix = tuple  # tuple[tuple[int, ...], ...]


class TorsionError(ValueError):
    """Raised when a cokernel has torsion but a torsion-free one is required."""


class ShapeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# basic helpers


def as_matrix(rows: Iterable[Iterable], ncols: int | None = None) -> IntMatrix:
    """Normalize nested iterables (ints or decimal strings) into an IntMatrix.

    ``ncols`` is needed to give an empty matrix a column count; it is
    ignored otherwise (the count is then read off the rows).
    """
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, bool):
                raise TypeError("booleans are not matrix entries")
            if isinstance(x, str):
                x = int(x)
            elif isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                x = x.numerator
            elif not isinstance(x, int):
                if float(x) != int(x):
                    raise ValueError(f"non-integer entry {x!r}")
                x = int(x)
            r.append(x)
        out.append(tuple(r))
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ShapeError("ragged matrix")
    if out and ncols is not None and len(out[0]) != ncols:
        raise ShapeError(f"expected {ncols} columns, got {len(out[0])}")
    return tuple(out)


def shape(M: IntMatrix, ncols: int | None = None) -> tuple[int, int]:
    if not M:
        return (0, ncols or 0)
    return (len(M), len(M[0]))


def transpose(M: Sequence[Sequence], ncols: int = 0) -> tuple:
    if not M:
        return tuple(() for _ in range(ncols))
    return tuple(zip(*M))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], inner: int | None = None) -> tuple:
    """Product of two matrices given as row sequences."""
    if not A:
        return ()
    n = len(A[0])
    if len(B) != n:
        raise ShapeError(f"cannot multiply {len(A)}x{n} by {len(B)}x?")
    if not B:
        # inner dimension 0: result has the column count of B, which we
        # cannot read off; callers needing it pass through matvec instead.
        return tuple(() for _ in A)
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Sequence[Sequence], v: Sequence) -> tuple:
    if A and len(A[0]) != len(v):
        raise ShapeError(f"matrix has {len(A[0])} columns, vector has length {len(v)}")
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def vecmat(v: Sequence, A: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if len(v) != len(A):
        raise ShapeError("length mismatch in vector-matrix product")
    if not A:
        return (0,) * (ncols or 0)
    return tuple(sum(x * A[i][j] for i, x in enumerate(v)) for j in range(len(A[0])))


def gcd_list(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    """True iff the integer vector ``v`` has coprime entries.

    >>> is_primitive((1, -1, 1)), is_primitive((2, 4))
    (True, False)
    """
    if not any(v):
        raise ValueError("the zero vector has no primitivity")
    return gcd_list(v) == 1


def primitive_part(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    if not any(fr):
        raise ValueError("zero vector")
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = gcd_list(ints)
    return tuple(x // g for x in ints)


def determinant(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-based elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    return det


def rref(M: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    A = [[Fraction(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1]) if M else 0


def solve_rational(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One rational solution of ``A x = b`` (free variables set to 0), or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return tuple(x)


def nullspace_rational(A: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the rational right kernel of ``A`` (a list of column vectors)."""
    if not A:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    R, piv = rref(A, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U * C * V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    invariant_factors: tuple[int, ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def smith_normal_form(C: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form by elementary row and column operations.

    The pivot is always an entry of minimal nonzero absolute value in the
    remaining block; ties go to the first one in row-major order, which
    makes the decomposition reproducible.
    """
    C = as_matrix(C)
    t = len(C)
    g = len(C[0]) if C else (ncols or 0)
    A = [list(r) for r in C]
    U = [[int(i == j) for j in range(t)] for i in range(t)]
    V = [[int(i == j) for j in range(g)] for i in range(g)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col dst += f * col src
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for k in range(min(t, g)):
        while True:
            best = None
            for i in range(k, t):
                for j in range(k, g):
                    a = A[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(k, i)
            swap_cols(k, j)
            p = A[k][k]
            done = True
            for i in range(k + 1, t):
                q = A[i][k] // p
                if q:
                    add_row(i, k, -q)
                if A[i][k]:
                    done = False
            for j in range(k + 1, g):
                q = A[k][j] // p
                if q:
                    add_col(j, k, -q)
                if A[k][j]:
                    done = False
            if not done:
                continue
            # pivot row/column cleared; enforce divisibility of the rest
            bad = next(
                ((i, j) for i in range(k + 1, t) for j in range(k + 1, g) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(k, bad[0], 1)
        if best is None:
            break
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]

    diag = tuple(A[i][i] for i in range(min(t, g)))
    return SmithDecomposition(
        U=tuple(map(tuple, U)),
        V=tuple(map(tuple, V)),
        D=tuple(map(tuple, A)),
        invariant_factors=diag,
        rows=t,
        cols=g,
    )


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix (exact; raises if not unimodular)."""
    n = len(U)
    aug = [list(U[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for i in range(n):
        row = R[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(x) for x in row))
    return tuple(inv)


# ---------------------------------------------------------------------------
# Hermite normal form (row style)


def hermite_normal_form(M: Sequence[Sequence[int]], with_transform: bool = False):
    """Row-style Hermite normal form of an integer matrix.

    Nonzero rows come first, pivots strictly increase to the right, pivots
    are positive and entries above a pivot are reduced into ``[0, pivot)``.
    Zero rows are dropped.  With ``with_transform`` also returns ``G`` such
    that ``G * M`` equals the result (rows of ``G`` for dropped zero rows
    are omitted too).
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else 0
    G = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[p] = A[p], A[r]
            G[r], G[p] = G[p], G[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    G[i] = [a - q * b for a, b in zip(G[i], G[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                G[r] = [-x for x in G[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    G[i] = [a - q * b for a, b in zip(G[i], G[r])]
            r += 1
    H = tuple(tuple(row) for row in A[:r])
    if with_transform:
        return H, tuple(tuple(row) for row in G[:r])
    return H


# ---------------------------------------------------------------------------
# cokernels and kernels


@dataclass(frozen=True)
class CokernelPresentation:
    """Cokernel of ``C: Z^g -> Z^t``.

    ``projection`` maps ``Z^t`` onto the free quotient ``Z^free_rank``; its
    rows are the Hermite normal form of the left kernel of ``C`` so the
    coordinates are canonical.  ``section`` is an integer right inverse of
    ``projection``.  ``torsion`` lists the invariant factors greater than
    one and ``torsion_projection`` the matching rows (read mod each factor).
    """

    free_rank: int
    torsion: tuple[int, ...]
    projection: IntMatrix
    section: IntMatrix
    torsion_projection: IntMatrix
    source_rank: int
    target_rank: int

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def require_torsion_free(self) -> None:
        if self.torsion:
            raise TorsionError(f"cokernel has torsion {self.torsion}; torsion-free data is required")

    def project(self, v: Sequence) -> tuple:
        """Free cokernel coordinates of ``v`` (exact, works for rational ``v``)."""
        if len(v) != self.target_rank:
            raise ShapeError("vector length does not match the cokernel target")
        return matvec(self.projection, v) if self.projection else ()

    def project_lift(self, lift: Sequence["CZ"]) -> tuple["CZ", ...]:
        re = self.project([c.re for c in lift])
        im = self.project([c.im for c in lift])
        return tuple(CZ(a, b) for a, b in zip(re, im))


def right_inverse(P: IntMatrix) -> IntMatrix:
    """Integer ``S`` with ``P * S == I`` for a surjective integer matrix ``P``."""
    f = len(P)
    if f == 0:
        return tuple(() for _ in range(0))
    snf = smith_normal_form(P)
    if any(d != 1 for d in snf.invariant_factors) or len(snf.invariant_factors) != f:
        raise ValueError("matrix is not surjective onto Z^rows")
    # P = U^-1 [I 0] V^-1  =>  S = V[:, :f] U
    Vf = tuple(row[:f] for row in snf.V)
    return matmul(Vf, snf.U)


def cokernel(C: Sequence[Sequence[int]], nrows: int | None = None, ncols: int | None = None) -> CokernelPresentation:
    """Cokernel of the integer matrix ``C`` (``t x g``).

    For an empty matrix pass ``nrows`` (t) and ``ncols`` (g).
    """
    C = as_matrix(C)
    t = len(C) if C else (nrows or 0)
    g = len(C[0]) if C else (ncols or 0)
    if not C and t:
        C = zeros(t, g)
    if t == 0:
        return CokernelPresentation(0, (), (), (), (), g, 0)
    snf = smith_normal_form(C, g)
    k = snf.rank
    free_rows = snf.U[k:]
    torsion = []
    tors_rows = []
    for i, d in enumerate(snf.invariant_factors[:k]):
        if abs(d) > 1:
            torsion.append(abs(d))
            tors_rows.append(snf.U[i])
    projection = hermite_normal_form(free_rows) if free_rows else ()
    section = right_inverse(projection) if projection else tuple(() for _ in range(t))
    return CokernelPresentation(
        free_rank=t - k,
        torsion=tuple(torsion),
        projection=projection,
        section=section,
        torsion_projection=tuple(tors_rows),
        source_rank=g,
        target_rank=t,
    )


def left_kernel_basis(C: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Rows spanning the integer left kernel ``{y : y C = 0}``, in Hermite form."""
    C = as_matrix(C)
    if not C:
        return ()
    snf = smith_normal_form(C, ncols)
    rows = snf.U[snf.rank:]
    return hermite_normal_form(rows) if rows else ()


def kernel_basis(C: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Columns spanning the integer kernel ``{v : C v = 0}``.

    Returned as a tuple of column vectors (each a tuple), Hermite-reduced so
    the basis is canonical.
    """
    C = as_matrix(C)
    g = len(C[0]) if C else (ncols or 0)
    if not C:
        return identity(g)
    snf = smith_normal_form(C, g)
    cols = transpose(snf.V)[snf.rank:]
    return hermite_normal_form(cols) if cols else ()


def solve_integer(C: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None) -> tuple[int, ...] | None:
    """An integer solution of ``C x = b`` or None if none exists."""
    C = as_matrix(C)
    g = len(C[0]) if C else (ncols or 0)
    if not C:
        return (0,) * g if not any(b) else None
    snf = smith_normal_form(C, g)
    c = matvec(snf.U, b)
    y = [0] * g
    for i, ci in enumerate(c):
        d = snf.invariant_factors[i] if i < len(snf.invariant_factors) else 0
        if d == 0:
            if ci:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return matvec(snf.V, y)


# ---------------------------------------------------------------------------
# C/Z coefficients


@dataclass(frozen=True, order=True)
class CZ:
    """A lift of an element of C/Z: real part in [0, 1), exact imaginary part."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        re = Fraction(self.re)
        object.__setattr__(self, "re", re - (re.numerator // re.denominator))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "CZ") -> "CZ":
        return CZ(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "CZ":
        return CZ(-self.re, -self.im)

    def scale(self, k: int) -> "CZ":
        return CZ(self.re * k, self.im * k)

    def numeric(self, dps: int = 15) -> complex:
        """``exp(2 pi i lambda)`` evaluated at ``dps`` decimal digits."""
        import mpmath

        with mpmath.workdps(dps + 5):
            z = mpmath.exp(2j * mpmath.pi * mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                                                          mpmath.mpf(self.im.numerator) / self.im.denominator))
            return complex(z)


def cz_vector(values: Iterable) -> tuple[CZ, ...]:
    """Coerce numbers, (re, im) pairs or CZ values into a tuple of CZ."""
    out = []
    for v in values:
        if isinstance(v, CZ):
            out.append(v)
        elif isinstance(v, (tuple, list)):
            out.append(CZ(Fraction(v[0]), Fraction(v[1])))
        elif isinstance(v, complex):
            raise TypeError("use exact (re, im) pairs, not complex floats")
        else:
            out.append(CZ(Fraction(0), Fraction(v)))
    return tuple(out)


def imaginary_lift(im: Iterable) -> tuple[CZ, ...]:
    """Lift with zero real part and the given imaginary parts."""
    return tuple(CZ(Fraction(0), Fraction(x)) for x in im)


def lift_class(P: CokernelPresentation, cls: Sequence, allow_torsion: bool = False) -> tuple[CZ, ...]:
    """Lift a class given in free cokernel coordinates to the target lattice.

    ``cls`` entries may be rationals (imaginary parts) or CZ values.  The
    real parts of the result are reduced mod 1.  With torsion present the
    call raises :class:`TorsionError` unless ``allow_torsion`` is set, in
    which case only the free part is lifted (torsion dies with C/Z
    coefficients).
    """
    if P.torsion and not allow_torsion:
        P.require_torsion_free()
    cls = cz_vector(cls)
    if len(cls) != P.free_rank:
        raise ShapeError(f"class has {len(cls)} coordinates, cokernel rank is {P.free_rank}")
    if P.free_rank == 0:
        return tuple(CZ() for _ in range(P.target_rank))
    re = matvec(P.section, [c.re for c in cls])
    im = matvec(P.section, [c.im for c in cls])
    return tuple(CZ(a, b) for a, b in zip(re, im))


def same_class(P: CokernelPresentation, a: Sequence[CZ], b: Sequence[CZ]) -> bool:
    """Whether two lifts define the same class in ``coker_{C/Z}`` (torsion-free case)."""
    P.require_torsion_free()
    dre = [x.re - y.re for x, y in zip(a, b)]
    dim = [x.im - y.im for x, y in zip(a, b)]
    pre = P.project(dre)
    pim = P.project(dim)
    return all(Fraction(x).denominator == 1 for x in pre) and not any(pim)


# ---------------------------------------------------------------------------
# formatting


def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(s, float):
        raise TypeError("floats are not accepted for exact rationals; use 'p/q' strings")
    return Fraction(s)
