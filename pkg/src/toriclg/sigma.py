"""From a complete intersection in a toric variety to a toric LG model.

The input is a toric variety ``Y`` (its div matrix), divisors ``D_1..D_c``
defining ``V = O(D_1) + ... + O(D_c)``, a class ``K`` and a section of
``V``.  The output lives on ``X = Tot(V^dual)``: the A side is
``div_X = [[div_Y, D], [0, Id]]`` and the B side has one row ``(nu, e_j)``
per term ``nu`` of the j-th component of the section.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exactlinalg as xl
from .exactlinalg import CZ
from .lineardata import LinearData, ToricLGModel, kopasetic_check
from .polyhedra import Polyhedron, lattice_points

CANONICAL = "canonical"
LEX = "lex"


class SigmaError(ValueError):
    pass


@dataclass(frozen=True)
class ToricVarietyData:
    div: tuple
    ray_names: tuple = ()
    smooth: bool | None = None  # user assertion, never checked
    dim: int = -1
    allow_torsion: bool = False  # only for pure polytope data, never for sigma models

    def __post_init__(self):
        div = xl.as_matrix(self.div)
        n = len(div[0]) if div else self.dim
        if n < 0:
            raise xl.ShapeError("a variety without rays needs an explicit dimension")
        for i, row in enumerate(div):
            if not any(row) or not xl.is_primitive(row):
                raise SigmaError(f"div row {i} = {row} is not a primitive ray generator")
        names = tuple(self.ray_names) or tuple(f"rho{i + 1}" for i in range(len(div)))
        if len(names) != len(div):
            raise xl.ShapeError("one name per ray is required")
        object.__setattr__(self, "div", div)
        object.__setattr__(self, "ray_names", names)
        object.__setattr__(self, "dim", n)
        if not self.allow_torsion:
            xl.cokernel(div, len(div), n).require_torsion_free()

    @property
    def r(self) -> int:
        return len(self.div)

    @property
    def coker(self) -> xl.CokernelPresentation:
        return xl.cokernel(self.div, self.r, self.dim)

    def polytope(self, D: Sequence) -> Polyhedron:
        """``P_D = {xi : div xi + D >= 0}``."""
        if len(D) != self.r:
            raise xl.ShapeError(f"divisor has {len(D)} entries for {self.r} rays")
        return Polyhedron(self.div, tuple(Fraction(x) for x in D), self.dim)

    def to_json(self) -> dict:
        d = {"div": [list(r) for r in self.div], "rays": list(self.ray_names), "dim": self.dim}
        if self.smooth is not None:
            d["smooth"] = self.smooth
        return d

    @classmethod
    def from_json(cls, data: dict) -> "ToricVarietyData":
        div = xl.as_matrix(data["div"])
        return cls(div, tuple(data.get("rays", ())), data.get("smooth"), int(data.get("dim", len(div[0]) if div else -1)))


def projective_line() -> ToricVarietyData:
    return ToricVarietyData(((1,), (-1,)), ("0", "inf"))


def product(*factors: ToricVarietyData) -> ToricVarietyData:
    """Product variety; rays are listed factor-major with block-diagonal div.

    The ray order interleaves nothing: all rays of the first factor come
    first.  Use :func:`reorder_rays` to match another convention.
    """
    n = sum(f.dim for f in factors)
    rows, names = [], []
    off = 0
    for k, f in enumerate(factors):
        for row, name in zip(f.div, f.ray_names):
            rows.append((0,) * off + tuple(row) + (0,) * (n - off - f.dim))
            names.append(f"{name}_{k + 1}")
        off += f.dim
    return ToricVarietyData(tuple(rows), tuple(names), dim=n)


def reorder_rays(Y: ToricVarietyData, order: Sequence[int]) -> ToricVarietyData:
    return ToricVarietyData(tuple(Y.div[i] for i in order), tuple(Y.ray_names[i] for i in order), Y.smooth, Y.dim, Y.allow_torsion)


@dataclass(frozen=True)
class SplitBundleData:
    base: ToricVarietyData
    divisors: tuple
    sigma_names: tuple = ()
    basepoint_free: bool | None = None  # user assertion

    def __post_init__(self):
        divs = tuple(tuple(int(x) for x in D) for D in self.divisors)
        for D in divs:
            if len(D) != self.base.r:
                raise xl.ShapeError(f"divisor {D} has {len(D)} entries for {self.base.r} rays")
        names = tuple(self.sigma_names) or tuple(f"sigma{j + 1}" for j in range(len(divs)))
        object.__setattr__(self, "divisors", divs)
        object.__setattr__(self, "sigma_names", names)

    @property
    def c(self) -> int:
        return len(self.divisors)

    @property
    def n(self) -> int:
        return self.base.dim

    def polytope(self, j: int) -> Polyhedron:
        return self.base.polytope(self.divisors[j])

    def to_json(self) -> dict:
        d = {"base": self.base.to_json(), "divisors": [list(D) for D in self.divisors]}
        if self.basepoint_free is not None:
            d["basepoint_free"] = self.basepoint_free
        return d


# ---------------------------------------------------------------------------
# lattice point order


def _cw_cmp(a, b):
    # clockwise angle from +y, ties by length
    ha = 0 if a[0] > 0 or (a[0] == 0 and a[1] > 0) else 1
    hb = 0 if b[0] > 0 or (b[0] == 0 and b[1] > 0) else 1
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    if cross:
        return -1 if cross < 0 else 1
    na, nb = abs(a[0]) + abs(a[1]), abs(b[0]) + abs(b[1])
    return (na > nb) - (na < nb)


def order_points(points: Sequence[Sequence[int]], order: str = CANONICAL) -> list[tuple[int, ...]]:
    """Order lattice points of a divisor polytope, the origin last.

    The canonical order is clockwise from the positive second axis in
    dimension 2, positive before negative (by size) in dimension 1, and
    lexicographic otherwise.  ``order="lex"`` forces plain lexicographic.
    """
    pts = [tuple(p) for p in points]
    zero = [p for p in pts if not any(p)]
    rest = [p for p in pts if any(p)]
    dim = len(pts[0]) if pts else 0
    if order == LEX or dim not in (1, 2):
        rest.sort()
    elif dim == 1:
        rest.sort(key=lambda p: (0 if p[0] > 0 else 1, abs(p[0])))
    else:
        rest.sort(key=functools.cmp_to_key(_cw_cmp))
    if order not in (CANONICAL, LEX):
        raise ValueError(f"unknown point order {order!r}")
    return rest + zero


def divisor_points(B: SplitBundleData, j: int, order: str = CANONICAL) -> list[tuple[int, ...]]:
    """``P_{D_j}`` intersected with the character lattice."""
    return order_points(lattice_points(B.polytope(j)), order)


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class SectionSpec:
    """GENERIC (every lattice point, coefficient lift ``default``) or explicit terms.

    Explicit terms are ``(j, nu, lift)`` with ``j`` 0-based.
    """

    generic: bool = True
    terms: tuple = ()
    default: CZ = CZ()

    @classmethod
    def generic_section(cls, default=CZ()) -> "SectionSpec":
        return cls(True, (), default)

    @classmethod
    def explicit(cls, terms) -> "SectionSpec":
        out = []
        for t in terms:
            j, nu = int(t[0]), tuple(int(x) for x in t[1])
            lift = xl.cz_vector([t[2]])[0] if len(t) > 2 else CZ()
            out.append((j, nu, lift))
        return cls(False, tuple(out))


@dataclass(frozen=True)
class SigmaBlocks:
    """Splittings of a sigma-built model.

    ``terms[i] = (j, nu)`` describes B row ``i``; rows with ``nu = 0`` are
    the ``0_j`` and come after all the nonzero terms.
    """

    bundle: SplitBundleData
    terms: tuple

    @property
    def c(self) -> int:
        return self.bundle.c

    @property
    def n(self) -> int:
        return self.bundle.n

    @property
    def nonzero_rows(self) -> tuple[int, ...]:
        return tuple(i for i, (_, nu) in enumerate(self.terms) if any(nu))

    @property
    def zero_rows(self) -> tuple[int, ...]:
        return tuple(i for i, (_, nu) in enumerate(self.terms) if not any(nu))

    def to_json(self) -> dict:
        return {
            "bundle": self.bundle.to_json(),
            "terms": [{"j": j, "nu": list(nu)} for j, nu in self.terms],
        }


def div_total_space(B: SplitBundleData) -> tuple:
    """``[[div_Y | D_1 .. D_c], [0 | Id]]``; base rays first, then the ``X_j``."""
    r, n, c = B.base.r, B.n, B.c
    rows = []
    for i in range(r):
        rows.append(tuple(B.base.div[i]) + tuple(D[i] for D in B.divisors))
    for j in range(c):
        rows.append((0,) * n + tuple(int(k == j) for k in range(c)))
    return tuple(rows)


def mon_for_section(B: SplitBundleData, S: SectionSpec, order: str = CANONICAL):
    """Rows ``(nu, e_j)`` of the section's terms, plus ``(terms, lifts)``.

    The nonzero terms come first (``j`` ascending), followed by the zero
    terms ``0_1 .. 0_c``, which is the block layout ``[[d', D'], [0, Id]]``.
    """
    c = B.c
    entries = []  # (j, nu, lift)
    if S.generic:
        for j in range(c):
            for nu in divisor_points(B, j, order):
                entries.append((j, nu, S.default))
    else:
        seen = set()
        for j, nu, lift in S.terms:
            if not 0 <= j < c:
                raise SigmaError(f"term refers to bundle summand {j + 1} but c = {c}")
            if len(nu) != B.n:
                raise xl.ShapeError(f"exponent {nu} has the wrong length")
            if (j, nu) in seen:
                raise SigmaError(f"duplicate term {nu} in summand {j + 1}")
            if not B.polytope(j).contains(nu):
                raise SigmaError(f"exponent {nu} is not a section of O(D_{j + 1})")
            seen.add((j, nu))
            entries.append((j, nu, lift))
    # block layout: stable, nonzero terms first, grouped by j
    entries.sort(key=lambda e: (not any(e[1]), e[0]))
    rows = tuple(nu + tuple(int(k == j) for k in range(c)) for j, nu, _ in entries)
    terms = tuple((j, nu) for j, nu, _ in entries)
    lifts = tuple(l for _, _, l in entries)
    return rows, terms, lifts


def pullback_lift(B: SplitBundleData, K) -> tuple[CZ, ...]:
    """A lift on the base rays extended by zero on the bundle rows."""
    K = xl.cz_vector(K)
    r, c = B.base.r, B.c
    if len(K) == r:
        return K + (CZ(),) * c
    if len(K) == r + c:
        return K
    raise xl.ShapeError(f"K lift has {len(K)} entries; expected {r} or {r + c}")


def build_lg(B: SplitBundleData, K, S: SectionSpec | None = None, order: str = CANONICAL) -> ToricLGModel:
    S = S or SectionSpec.generic_section()
    B.base.coker.require_torsion_free()
    if B.c == 0:
        raise SigmaError("a sigma model needs at least one bundle summand (c >= 1)")
    A = div_total_space(B)
    names = B.base.ray_names + tuple(f"X_{s}" for s in B.sigma_names)
    rows, terms, lifts = mon_for_section(B, S, order)
    if not rows:
        raise SigmaError("the section has no terms")
    n = B.n + B.c
    return ToricLGModel(
        LinearData(A, pullback_lift(B, K), n, names),
        LinearData(rows, lifts, n),
        SigmaBlocks(B, terms),
        "sigma",
        True,
    )


def dual_exists(M: ToricLGModel) -> bool | None:
    """Whether the dual A side is kopasetic; None when ``c = 0`` (not covered).

    Every B row pairs to 1 with ``phi_1 + ... + phi_c`` so the normals lie in
    an open half-space; this is asserted as well.
    """
    blocks = M.blocks
    if not isinstance(blocks, SigmaBlocks) or blocks.c == 0:
        return None
    n = blocks.n
    for row in M.B.matrix:
        if sum(row[n:]) <= 0:
            raise SigmaError("B row outside the open half-space of the fiber functional")
    return kopasetic_check(M.B).verdict


@dataclass(frozen=True)
class ChowWitness:
    """``[[-]_Y | -[D]]`` and whether it presents ``coker(div_X)``."""

    map: tuple
    invariant_factors_X: tuple
    invariant_factors_Y: tuple
    ok: bool


def chow_isomorphism(B: SplitBundleData) -> ChowWitness:
    divX = div_total_space(B)
    PY = B.base.coker.projection
    cols = [tuple(-x for x in xl.matvec(PY, D)) for D in B.divisors] if PY else []
    W = tuple(tuple(row) + tuple(col[i] for col in cols) for i, row in enumerate(PY))
    cX = xl.cokernel(divX, len(divX), B.n + B.c)
    fX = xl.smith_normal_form(divX, B.n + B.c).invariant_factors
    fY = xl.smith_normal_form(B.base.div, B.n).invariant_factors if B.base.div else ()
    kills = all(not any(r) for r in xl.matmul(W, divX)) if W else True
    same = (xl.hermite_normal_form(W) if W else ()) == cX.projection
    ok = kills and same and tuple(f for f in fX if f != 1) == tuple(f for f in fY if f != 1)
    return ChowWitness(W, fX, fY, ok)
