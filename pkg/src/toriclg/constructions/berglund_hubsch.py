"""Berglund-Huebsch transposition for square exponent matrices.

``P`` has one column per monomial of a weighted homogeneous polynomial
in ``x_0..x_n``.  The weights ``(l, d)`` are the left kernel of the
augmented matrix ``[[P, 1], [1, 1]]``; the transpose ``P^T`` gives the
mirror weights the same way.  The augmented matrix also factors through
the sigma-model data of the hypersurface, which gives a second route to
the mirror weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .. import exactlinalg as xl
from ..errors import ConsistencyError


class BHError(ValueError):
    pass


class KernelRankError(BHError):
    pass


class NotPositiveError(BHError):
    pass


@dataclass(frozen=True)
class BHData:
    weights: tuple
    exponents: tuple  # columns of P, one per monomial

    def __post_init__(self):
        l = tuple(int(x) for x in self.weights)
        cols = tuple(tuple(int(x) for x in v) for v in self.exponents)
        if not l or any(x <= 0 for x in l):
            raise BHError("weights must be positive integers")
        if len(cols) != len(l) or any(len(v) != len(l) for v in cols):
            raise BHError(f"the exponent matrix must be square of size {len(l)}")
        if any(x < 0 for v in cols for x in v):
            raise BHError("exponents must be nonnegative")
        d = sum(l)
        for v in cols:
            if sum(a * b for a, b in zip(l, v)) != d:
                raise BHError(f"monomial {v} does not have degree {d}")
        if xl.determinant(self._P(cols)) == 0:
            raise BHError("the exponent matrix is singular")
        object.__setattr__(self, "weights", l)
        object.__setattr__(self, "exponents", cols)

    @staticmethod
    def _P(cols):
        return xl.transpose(cols)

    @property
    def degree(self) -> int:
        return sum(self.weights)

    @property
    def P(self) -> tuple:
        """Rows are variables, columns are monomials."""
        return self._P(self.exponents)

    def augmented(self) -> tuple:
        return augmented(self.P)

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "degree": self.degree, "exponents": [list(v) for v in self.exponents]}

    @classmethod
    def from_json(cls, data: dict) -> "BHData":
        if "exponents" in data:
            cols = data["exponents"]
        else:
            cols = xl.transpose(xl.as_matrix(data["P"]))
        B = cls(tuple(data["weights"]), tuple(tuple(v) for v in cols))
        if "degree" in data and int(data["degree"]) != B.degree:
            raise BHError(f"degree {data['degree']} is not the sum of the weights")
        return B


def augmented(P: Sequence[Sequence[int]]) -> tuple:
    """``[[P, 1], [1, 1]]``."""
    P = xl.as_matrix(P)
    k = len(P[0])
    return tuple(tuple(row) + (1,) for row in P) + ((1,) * (k + 1),)


def degree_monomials(weights: Sequence[int], d: int | None = None) -> list[tuple[int, ...]]:
    """All exponent vectors of weighted degree ``d`` (default: the sum of the weights)."""
    l = tuple(weights)
    d = sum(l) if d is None else d
    ranges = [range(d // w + 1) for w in l]
    out = [e for e in itertools.product(*ranges) if sum(a * b for a, b in zip(l, e)) == d]
    return sorted(out, reverse=True)


def _positive_generator(K) -> tuple[int, ...]:
    if len(K) != 1:
        raise KernelRankError(f"the augmented left kernel has rank {len(K)}, not 1")
    g = xl.primitive_part(K[0])
    if all(x < 0 for x in g):
        g = tuple(-x for x in g)
    if any(x <= 0 for x in g[:-1]) or g[-1] >= 0:
        raise NotPositiveError(f"the kernel generator {g} is not of the form (l, -d) with l > 0")
    return g


def weights_of(P: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """``(l, d)`` from the left kernel of the augmented matrix of ``P``."""
    aug = augmented(P)
    g = _positive_generator(xl.left_kernel_basis(aug, len(aug[0])))
    return g[:-1], -g[-1]


@dataclass(frozen=True)
class Factorization:
    A: tuple  # div of the total space of O(-d) over P(l), the anticanonical representative
    B: tuple  # rows (nu_k, 1) per monomial and (0, 1) for the constant
    ok: bool
    cokernel_of_B: tuple  # (l_hat, -d_hat) found from B alone

    def to_json(self) -> dict:
        return {
            "A": [list(r) for r in self.A],
            "B": [list(r) for r in self.B],
            "augmented_equals_A_Bt": self.ok,
            "cokernel_of_B": list(self.cokernel_of_B),
        }


def factor_augmented(data: BHData) -> Factorization:
    """``[[P, 1], [1, 1]] = A B^T`` with ``A`` the div map of ``Tot(O(d)^dual)`` over ``P(l)``."""
    l = data.weights
    n1 = len(l)
    K = xl.transpose(xl.kernel_basis((l,), n1))  # (n+1) x n, a div map for P(l)
    n = len(K[0])
    A = tuple(tuple(K[i]) + (1,) for i in range(n1)) + ((0,) * n + (1,),)
    Brows = []
    for p in data.exponents:
        nu = xl.solve_integer(K, tuple(x - 1 for x in p), n)
        if nu is None:
            raise ConsistencyError(f"monomial {p} is not a character of the anticanonical polytope")
        Brows.append(tuple(nu) + (1,))
    Brows.append((0,) * n + (1,))
    Bm = tuple(Brows)
    prod = xl.matmul(A, xl.transpose(Bm))
    coB = _positive_generator(xl.left_kernel_basis(Bm, n + 1))
    return Factorization(A, Bm, prod == data.augmented(), coB)


@dataclass(frozen=True)
class BHDual:
    mirror: BHData
    factorization: Factorization
    routes_agree: bool

    def to_json(self) -> dict:
        return {
            "mirror": self.mirror.to_json(),
            "factorization": self.factorization.to_json(),
            "left_kernel_routes_agree": self.routes_agree,
        }


def bh_dual(data: BHData) -> BHDual:
    """Mirror weights from the transposed augmented matrix, checked against the cokernel of ``B``."""
    l, _ = weights_of(data.P)
    if l != xl.primitive_part(data.weights):
        raise ConsistencyError("the weights do not span the augmented left kernel")
    Phat = xl.transpose(data.P)
    lh, dh = weights_of(Phat)
    if dh != sum(lh):
        raise ConsistencyError("the mirror degree is not the sum of the mirror weights")
    mirror = BHData(lh, tuple(tuple(v) for v in xl.transpose(Phat)))
    F = factor_augmented(data)
    if not F.ok:
        raise ConsistencyError("the augmented matrix does not factor as A B^T")
    agree = F.cokernel_of_B == tuple(lh) + (-dh,)
    if not agree:
        raise ConsistencyError("the cokernel of B differs from the transposed left kernel")
    return BHDual(mirror, F, agree)
