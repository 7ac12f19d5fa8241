"""Rational convex polyhedral sets in H-representation.

A :class:`Polyhedron` is the set ``{x : A x + alpha >= 0}`` with an integer
matrix ``A`` (one inward normal per row) and rational offsets ``alpha``.
Facets, vertices and recession rays are computed exactly with the simplex
in :mod:`toriclg.lp` and by solving square systems over the rationals.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import exactlinalg as xl
from .lp import OPTIMAL, linprog

DEFAULT_DIM_CAP = 8


class PolyhedronError(ValueError):
    pass


class EmptyInteriorError(PolyhedronError):
    pass


class UnboundedError(PolyhedronError):
    pass


class OriginNotInteriorError(PolyhedronError):
    pass


class NotLatticePolytopeError(PolyhedronError):
    pass


class DimensionCapError(PolyhedronError):
    pass


def dim_cap() -> int:
    """Vertex-enumeration dimension cap; ``TLG_DIM_CAP`` overrides the default."""
    raw = os.environ.get("TLG_DIM_CAP")
    return int(raw) if raw else DEFAULT_DIM_CAP


def _frac_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class PointSet:
    """Points (exact rationals) plus primitive integer ray generators."""

    points: tuple[tuple[Fraction, ...], ...]
    rays: tuple[tuple[int, ...], ...] = ()
    dim: int = 0

    def __post_init__(self):
        pts = []
        for p in self.points:
            p = _frac_vec(p)
            if p not in pts:
                pts.append(p)
        rays = []
        for r in self.rays:
            r = xl.primitive_part(r)
            if r not in rays:
                rays.append(r)
        d = self.dim or (len(pts[0]) if pts else (len(rays[0]) if rays else 0))
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "dim", d)

    @property
    def is_bounded(self) -> bool:
        return not self.rays

    def to_json(self) -> dict:
        return {
            "vertices": [[xl.format_fraction(x) for x in p] for p in self.points],
            "rays": [list(r) for r in self.rays],
        }

    @classmethod
    def from_json(cls, data: dict, dim: int = 0) -> "PointSet":
        pts = [tuple(xl.parse_fraction(x) for x in p) for p in data.get("vertices", data.get("points", []))]
        rays = [tuple(int(x) for x in r) for r in data.get("rays", [])]
        return cls(tuple(pts), tuple(rays), dim)


@dataclass(frozen=True)
class FacetInfo:
    """Irredundant rows of a system and where every other row went.

    ``facets`` are original row indices, ascending.  ``representative[i]``
    is ``i`` for a facet row, the facet row defining the same half-space
    (after scaling) for a duplicate of a facet, and ``None`` otherwise.
    """

    facets: tuple[int, ...]
    representative: tuple[int | None, ...]


@dataclass(frozen=True)
class Polyhedron:
    normals: tuple
    offsets: tuple
    dim: int = -1

    def __post_init__(self):
        normals = xl.as_matrix(self.normals)
        offsets = tuple(xl.parse_fraction(a) if isinstance(a, str) else Fraction(a) for a in self.offsets)
        if len(normals) != len(offsets):
            raise xl.ShapeError(f"{len(normals)} normals but {len(offsets)} offsets")
        d = len(normals[0]) if normals else self.dim
        if d < 0:
            raise xl.ShapeError("an empty system needs an explicit dimension")
        if normals and self.dim >= 0 and self.dim != d:
            raise xl.ShapeError(f"normals live in dimension {d}, not {self.dim}")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "dim", d)

    def __len__(self) -> int:
        return len(self.normals)

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        for nu, a in zip(self.normals, self.offsets):
            s = sum(n * xi for n, xi in zip(nu, x)) + a
            if s < 0 or (strict and s == 0):
                return False
        return True

    def slacks(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum(Fraction(n) * xi for n, xi in zip(nu, x)) + a for nu, a in zip(self.normals, self.offsets))

    @cached_property
    def interior(self) -> tuple[Fraction, ...] | None:
        return interior_point(self)

    @cached_property
    def facet_info(self) -> FacetInfo:
        return facet_rows(self)

    @cached_property
    def vrep(self) -> PointSet:
        return vertices_and_rays(self)

    @property
    def vertices(self):
        return self.vrep.points

    @property
    def rays(self):
        return self.vrep.rays

    def to_json(self) -> dict:
        return {
            "normals": [list(r) for r in self.normals],
            "offsets": [xl.format_fraction(a) for a in self.offsets],
            "dim": self.dim,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polyhedron":
        normals = xl.as_matrix(data["normals"])
        offsets = [xl.parse_fraction(a) for a in data["offsets"]]
        return cls(normals, tuple(offsets), int(data.get("dim", len(normals[0]) if normals else -1)))


# ---------------------------------------------------------------------------
# helpers


def _nonzero_rows(P: Polyhedron) -> list[int]:
    return [i for i, nu in enumerate(P.normals) if any(nu)]


def _trivially_empty(P: Polyhedron) -> bool:
    return any(not any(nu) and a < 0 for nu, a in zip(P.normals, P.offsets))


def _canonical_row(nu, a) -> tuple:
    g = xl.gcd_list(nu)
    return (tuple(x // g for x in nu), Fraction(a) / g)


def is_empty(P: Polyhedron) -> bool:
    if _trivially_empty(P):
        return True
    rows = _nonzero_rows(P)
    if not rows:
        return False
    A = [[-x for x in P.normals[i]] for i in rows]
    b = [P.offsets[i] for i in rows]
    return linprog([0] * P.dim, A, b).status != OPTIMAL


# ---------------------------------------------------------------------------
# operations


def interior_point(P: Polyhedron) -> tuple[Fraction, ...] | None:
    """A point strictly inside every inequality, or None if the interior is empty.

    Solved as the exact LP ``max eps`` subject to ``A x + alpha >= eps``
    (with ``eps <= 1`` to keep it bounded).  Rows with zero normal are
    constant and only matter through their sign.
    """
    if _trivially_empty(P):
        return None
    rows = _nonzero_rows(P)
    n = P.dim
    if not rows:
        return tuple(Fraction(0) for _ in range(n))
    A = [[-x for x in P.normals[i]] + [1] for i in rows]
    b = [P.offsets[i] for i in rows]
    A.append([0] * n + [1])
    b.append(1)
    res = linprog([0] * n + [1], A, b)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:n]


def facet_rows(P: Polyhedron) -> FacetInfo:
    """Irredundant inequalities of a polyhedron with nonempty interior.

    Rows defining the same half-space are grouped first; the group keeps
    its lowest primitive row (or lowest row when none is primitive).  Each
    surviving row is then tested by an exact LP: it is a facet iff dropping
    it lets its own slack go negative.
    """
    if interior_point(P) is None:
        raise EmptyInteriorError("facet computation needs a nonempty interior")
    groups: dict = {}
    for i in _nonzero_rows(P):
        groups.setdefault(_canonical_row(P.normals[i], P.offsets[i]), []).append(i)
    survivors = []
    for members in groups.values():
        prim = [i for i in members if xl.gcd_list(P.normals[i]) == 1]
        survivors.append(min(prim) if prim else min(members))
    survivors.sort()

    n = P.dim
    facets = []
    for s in survivors:
        others = [i for i in survivors if i != s]
        A = [[-x for x in P.normals[i]] for i in others]
        b = [P.offsets[i] for i in others]
        # slack_s >= -1 keeps the LP bounded
        A.append([-x for x in P.normals[s]])
        b.append(P.offsets[s] + 1)
        res = linprog([-x for x in P.normals[s]], A, b)
        min_slack = -res.value + P.offsets[s]
        if min_slack < 0:
            facets.append(s)
    facet_set = set(facets)
    rep: list[int | None] = [None] * len(P.normals)
    for members in groups.values():
        keep = next((i for i in members if i in facet_set), None)
        if keep is not None:
            for i in members:
                rep[i] = keep
    return FacetInfo(tuple(facets), tuple(rep))


def _distinct_rows(P: Polyhedron) -> list[int]:
    seen = {}
    for i in _nonzero_rows(P):
        seen.setdefault(_canonical_row(P.normals[i], P.offsets[i]), i)
    return sorted(seen.values())


def vertices_and_rays(P: Polyhedron, cap: int | None = None) -> PointSet:
    """All vertices and primitive recession-ray generators.

    Vertices come from exhaustive enumeration of ``n``-subsets of the
    inequalities, solved exactly and filtered by membership.  A nontrivial
    lineality space is reported in both directions among the rays and the
    points are then the vertices of the slice orthogonal to it, so that
    ``P = conv(points) + cone(rays)`` always holds.
    """
    n = P.dim
    cap = dim_cap() if cap is None else cap
    if n > cap:
        raise DimensionCapError(f"dimension {n} exceeds the vertex-enumeration cap {cap} (set TLG_DIM_CAP)")
    if is_empty(P):
        return PointSet((), (), n)
    rows = facet_rows(P).facets if interior_point(P) is not None else _distinct_rows(P)
    all_rows = _nonzero_rows(P)
    A_all = [P.normals[i] for i in all_rows]

    lineality = [xl.primitive_part(v) for v in xl.kernel_basis(A_all, n)] if A_all else [
        tuple(int(i == j) for i in range(n)) for j in range(n)
    ]
    rays = []
    for v in lineality:
        rays.append(v)
        rays.append(tuple(-x for x in v))

    # extreme rays of the pointed part of the recession cone
    k = n - len(lineality) - 1
    if k >= 0:
        extra = [tuple(v) for v in lineality]
        for S in itertools.combinations(rows, k):
            M = [P.normals[i] for i in S] + extra
            null = xl.nullspace_rational(M, n) if M else xl.nullspace_rational([], n)
            if len(null) != 1:
                continue
            d = xl.primitive_part(null[0])
            for cand in (d, tuple(-x for x in d)):
                if all(sum(a * x for a, x in zip(nu, cand)) >= 0 for nu in A_all) and cand not in rays:
                    rays.append(cand)

    # vertices of P intersected with the orthogonal complement of the lineality space
    verts = []
    eq = [tuple(v) for v in lineality]
    for S in itertools.combinations(rows, n - len(eq)):
        M = [P.normals[i] for i in S] + eq
        if xl.determinant(M) == 0:
            continue
        x = xl.solve_rational(M, [-P.offsets[i] for i in S] + [0] * len(eq))
        if x is not None and P.contains(x) and x not in verts:
            verts.append(x)
    if n == 0 and not verts:
        verts.append(())
    return PointSet(tuple(sorted(verts)), tuple(sorted(rays)), n)


def _points_line_free(rays) -> bool:
    """True iff cone(rays) contains no line."""
    if not rays:
        return True
    n = len(rays[0])
    m = len(rays)
    A_eq = [[r[i] for r in rays] for i in range(n)] + [[1] * m]
    b_eq = [0] * n + [1]
    return linprog([0] * m, (), (), A_eq, b_eq, nonneg=True).status != OPTIMAL


def vertex_test_with_ray(S: PointSet, p: Sequence) -> bool:
    """Whether ``p`` is a 0-face of ``conv(S.points) + cone(S.rays)``.

    ``p`` is a vertex iff it is not a convex combination of the other
    points plus a nonnegative combination of the rays (an exact LP
    feasibility test).
    """
    p = _frac_vec(p)
    if p not in S.points:
        raise ValueError(f"{p} is not one of the generating points")
    if not _points_line_free(S.rays):
        return False
    others = [q for q in S.points if q != p]
    n = len(p)
    gens = others + [tuple(Fraction(x) for x in r) for r in S.rays]
    if not others:
        return True
    m = len(gens)
    A_eq = [[g[i] for g in gens] for i in range(n)]
    A_eq.append([1] * len(others) + [0] * len(S.rays))
    b_eq = list(p) + [1]
    res = linprog([0] * m, (), (), A_eq, b_eq, nonneg=True)
    return res.status != OPTIMAL


def polar(C):
    """Polar set ``{x : <v, x> + 1 >= 0 for all v in C}``.

    A :class:`Polyhedron` (with the origin in its interior) maps to the
    :class:`PointSet` of vertices of ``conv({nu_j / alpha_j} | {0})``; a
    :class:`PointSet` maps to the corresponding H-representation.
    """
    if isinstance(C, Polyhedron):
        if _trivially_empty(C):
            raise OriginNotInteriorError("empty set")
        rows = _nonzero_rows(C)
        bad = [i for i in rows if C.offsets[i] <= 0]
        if bad:
            raise OriginNotInteriorError(f"offsets must be positive (rows {bad}); the origin is not interior")
        pts = [tuple(Fraction(x) / C.offsets[i] for x in C.normals[i]) for i in rows]
        pts.append(tuple(Fraction(0) for _ in range(C.dim)))
        S = PointSet(tuple(pts), (), C.dim)
        verts = [p for p in S.points if vertex_test_with_ray(S, p)]
        return PointSet(tuple(sorted(verts)), (), C.dim)
    if isinstance(C, PointSet):
        normals, offsets = [], []
        for v in C.points:
            if not any(v):
                continue
            prim = xl.primitive_part(v)
            # v = s * prim  =>  prim.x + 1/s >= 0
            j = next(i for i, x in enumerate(prim) if x)
            s = Fraction(v[j]) / prim[j]
            normals.append(prim)
            offsets.append(1 / s)
        for r in C.rays:
            normals.append(xl.primitive_part(r))
            offsets.append(Fraction(0))
        return Polyhedron(tuple(normals), tuple(offsets), C.dim)
    raise TypeError(f"cannot take the polar of {type(C).__name__}")


def lattice_points(P: Polyhedron) -> list[tuple[int, ...]]:
    """All integer points of a bounded polyhedron, in lexicographic order."""
    V = vertices_and_rays(P)
    if V.rays:
        raise UnboundedError("lattice points of an unbounded polyhedron")
    if not V.points:
        return []
    n = P.dim
    lo = [math.floor(min(p[i] for p in V.points)) for i in range(n)]
    hi = [math.ceil(max(p[i] for p in V.points)) for i in range(n)]
    return [pt for pt in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))) if P.contains(pt)]


def is_reflexive(P: Polyhedron) -> bool:
    """Whether a lattice polytope with the origin inside has a lattice polar."""
    if interior_point(P) is None or not P.contains([0] * P.dim, strict=True):
        raise OriginNotInteriorError("the origin is not an interior point")
    V = vertices_and_rays(P)
    if V.rays:
        raise NotLatticePolytopeError("unbounded")
    if any(x.denominator != 1 for p in V.points for x in p):
        raise NotLatticePolytopeError("vertices are not integral")
    dual = polar(P)
    return all(x.denominator == 1 for p in dual.points for x in p)


def translate(P: Polyhedron, xi0: Sequence) -> Polyhedron:
    """The polyhedron ``xi0 + P``; offsets become ``alpha - A xi0``."""
    shift = xl.matvec(P.normals, _frac_vec(xi0)) if P.normals else ()
    return Polyhedron(P.normals, tuple(a - s for a, s in zip(P.offsets, shift)), P.dim)


def canonical_form(P: Polyhedron) -> tuple:
    """Sorted primitive facet inequalities ``(normal, offset)``.

    Two full-dimensional polyhedra are equal as sets iff their canonical
    forms agree.
    """
    info = facet_rows(P)
    return tuple(sorted(_canonical_row(P.normals[i], P.offsets[i]) for i in info.facets))


def from_facets(form: Iterable, dim: int) -> Polyhedron:
    form = list(form)
    return Polyhedron(tuple(nu for nu, _ in form), tuple(a for _, a in form), dim)


def hull(points: Iterable[Sequence], rays: Iterable[Sequence] = ()) -> PointSet:
    """Vertices and rays of ``conv(points) + cone(rays)`` (redundant points removed)."""
    S = PointSet(tuple(_frac_vec(p) for p in points), tuple(tuple(r) for r in rays))
    keep = [p for p in S.points if vertex_test_with_ray(S, p)]
    return PointSet(tuple(sorted(keep)), S.rays, S.dim)
