"""Nef partitions and the Batyrev-Borisov mirror, realized through duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .. import exactlinalg as xl
from ..errors import ConsistencyError
from ..polyhedra import (
    Polyhedron,
    PointSet,
    canonical_form,
    hull,
    is_reflexive,
    lattice_points,
    polar,
    vertices_and_rays,
)
from ..sigma import SectionSpec, SplitBundleData, ToricVarietyData, build_lg, order_points
from ..structure import Analysis, analyze, section_rows_check


class NefError(ValueError):
    pass


@dataclass(frozen=True)
class NefData:
    base: ToricVarietyData
    parts: tuple

    def __post_init__(self):
        parts = tuple(tuple(int(x) for x in D) for D in self.parts)
        for D in parts:
            if len(D) != self.base.r:
                raise xl.ShapeError(f"part {D} has {len(D)} entries for {self.base.r} rays")
        object.__setattr__(self, "parts", parts)

    @property
    def c(self) -> int:
        return len(self.parts)

    def bundle(self) -> SplitBundleData:
        return SplitBundleData(self.base, self.parts)

    def nabla(self, j: int) -> Polyhedron:
        return self.base.polytope(self.parts[j])

    def E(self) -> tuple:
        """Ray generators appearing in each part."""
        return tuple(frozenset(self.base.div[i] for i, x in enumerate(D) if x) for D in self.parts)

    def anticanonical_polytope(self) -> Polyhedron:
        return self.base.polytope((1,) * self.base.r)

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "parts": [list(D) for D in self.parts]}


@dataclass(frozen=True)
class NefVerdict:
    valid: bool
    givental: bool
    calabi_yau: bool
    reasons: tuple
    C_vertices: tuple
    Cj_vertices: tuple

    def to_json(self) -> dict:
        fmt = lambda pts: [[xl.format_fraction(x) for x in p] for p in pts]
        return {
            "valid": self.valid,
            "givental": self.givental,
            "calabi_yau": self.calabi_yau,
            "reasons": list(self.reasons),
            "C_vertices": fmt(self.C_vertices),
            "C_j_vertices": [fmt(v) for v in self.Cj_vertices],
        }


def _nonzero_points(P: Polyhedron) -> list:
    return [p for p in lattice_points(P) if any(p)]


def nef_subpartition_check(N: NefData) -> NefVerdict:
    """Givental, Calabi-Yau and ``vert(C) = union of vert(C_j)``."""
    reasons = []
    r = N.base.r
    giv = True
    for j, D in enumerate(N.parts):
        if any(x < 0 for x in D) or not any(D):
            giv = False
            reasons.append(f"D_{j + 1} is not a nonzero effective divisor")
    rest = [1 - sum(D[i] for D in N.parts) for i in range(r)]
    if any(x < 0 for x in rest):
        giv = False
        reasons.append("-K - sum D_j is not effective")
    total = tuple(sum(D[i] for D in N.parts) for i in range(r))
    cy = xl.solve_integer(N.base.div, tuple(1 - t for t in total), N.base.dim) is not None
    if not cy:
        reasons.append("[sum D_j] differs from the anticanonical class")

    Cj = []
    allpts = []
    for j in range(N.c):
        pts = _nonzero_points(N.nabla(j)) if giv else []
        if not pts:
            reasons.append(f"C_{j + 1} is empty")
            Cj.append(())
            continue
        allpts.extend(pts)
        Cj.append(hull(pts).points)
    Cv = hull(allpts).points if allpts else ()
    union = set(p for v in Cj for p in v)
    vert_ok = bool(allpts) and set(Cv) == union
    if allpts and not vert_ok:
        reasons.append("vert(C) differs from the union of the vert(C_j)")
    valid = giv and vert_ok and all(Cj)
    return NefVerdict(valid, giv, cy, tuple(reasons), tuple(Cv), tuple(Cj))


@dataclass(frozen=True)
class PhiResult:
    ok: bool
    table: tuple  # table[i][k] = phi_i(e_k) for every ray e_k


def phi_check(N: NefData) -> PhiResult:
    """``phi_i(e) = -min over P_{D_i} of <e, mu>`` must be 1 on ``E_i`` and 0 on the other parts."""
    if not is_reflexive(N.anticanonical_polytope()):
        raise NefError("the anticanonical polytope of the base is not reflexive")
    table = []
    for i in range(N.c):
        V = vertices_and_rays(N.nabla(i)).points
        row = []
        for e in N.base.div:
            row.append(-min(sum(a * b for a, b in zip(e, v)) for v in V))
        table.append(tuple(row))
    ok = True
    for k in range(N.base.r):
        owners = [j for j in range(N.c) if N.parts[j][k]]
        for i in range(N.c):
            want = 1 if i in owners else 0
            if owners and table[i][k] != want:
                ok = False
    return PhiResult(ok, tuple(table))


@dataclass(frozen=True)
class BBDual:
    nabla: tuple  # Polyhedron per j
    E_star: tuple  # vertices per j
    Pstar_polar: PointSet  # (P*)°, as vertices
    Pstar: Polyhedron
    dual: NefData

    def to_json(self) -> dict:
        fmt = lambda pts: [[xl.format_fraction(x) for x in p] for p in pts]
        return {
            "nabla": [P.to_json() for P in self.nabla],
            "E_star": [fmt(E) for E in self.E_star],
            "Pstar_polar_vertices": fmt(self.Pstar_polar.points),
            "Pstar": self.Pstar.to_json(),
            "dual": self.dual.to_json(),
        }


def _nabla_via_phi(N: NefData, j: int) -> Polyhedron:
    """``{mu : <e, mu> >= -phi_j(e)}`` over the ray generators, ``phi_j`` from ``P_{D_j}``."""
    V = vertices_and_rays(N.nabla(j)).points
    phi = [-min(sum(a * b for a, b in zip(e, v)) for v in V) for e in N.base.div]
    return Polyhedron(N.base.div, tuple(phi), N.base.dim)


def bb_dual(N: NefData) -> BBDual:
    """The dual nef partition: ``nabla_j = P_{D_j}``, ``E*_j`` its nonzero vertices, ``P*``."""
    v = nef_subpartition_check(N)
    if not (v.valid and v.calabi_yau):
        raise NefError("not a Calabi-Yau nef sub-partition: " + "; ".join(v.reasons))
    n = N.base.dim
    nablas = tuple(N.nabla(j) for j in range(N.c))
    for j in range(N.c):
        a, b = vertices_and_rays(_nabla_via_phi(N, j)), vertices_and_rays(nablas[j])
        if set(a.points) != set(b.points) or set(a.rays) != set(b.rays):
            raise ConsistencyError(f"nabla_{j + 1} differs between P_D and the phi description")
    E_star = []
    pts = []
    for P in nablas:
        V = vertices_and_rays(P).points
        E_star.append(tuple(p for p in V if any(p)))
        pts.extend(V)
    # E*_j should agree with the vertices of C_j
    for j, (E, C) in enumerate(zip(E_star, v.Cj_vertices)):
        if set(E) != set(C):
            raise ConsistencyError(f"E*_{j + 1} differs from vert(C_{j + 1})")
    Ppolar = hull(pts)
    Ppolar = PointSet(tuple(p for p in Ppolar.points), (), n)
    Pstar = polar(Ppolar)
    # reflexivity of (P*)°: its polar P* must be a lattice polytope
    Ppolar_h = polar(PointSet(vertices_and_rays(Pstar).points, (), n))
    if not is_reflexive(Ppolar_h):
        raise ConsistencyError("(P*)° is not reflexive")
    verts = [p for p in Ppolar.points]
    if any(x.denominator != 1 for p in verts for x in p):
        raise ConsistencyError("(P*)° has non-integral vertices")
    rays = order_points([tuple(int(x) for x in p) for p in verts])
    Ystar = ToricVarietyData(tuple(rays), tuple(f"e*{i + 1}" for i in range(len(rays))), dim=n, allow_torsion=True)
    parts = []
    for E in E_star:
        Es = {tuple(int(x) for x in p) for p in E}
        parts.append(tuple(int(ray in Es) for ray in rays))
    return BBDual(nablas, tuple(E_star), Ppolar, Pstar, NefData(Ystar, tuple(parts)))


def partition_sets(N: NefData) -> tuple:
    return tuple(frozenset(E) for E in N.E())


def wbb_section(N: NefData) -> SectionSpec:
    """Every lattice point of every ``P_{D_j}``; nonzero ones get imaginary lift 1, zero ones lift 0."""
    terms = []
    B = N.bundle()
    for j in range(N.c):
        for nu in order_points(lattice_points(B.polytope(j))):
            terms.append((j, nu, (0, 1 if any(nu) else 0)))
    return SectionSpec.explicit(terms)


@dataclass(frozen=True)
class BBReport:
    analysis: Analysis
    bb: BBDual
    yprime_is_Pstar: bool
    divisors_match: bool
    is_bundle: bool
    section_ok: bool

    @property
    def ok(self) -> bool:
        return self.yprime_is_Pstar and self.divisors_match and self.is_bundle and self.section_ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "yprime_polytope_equals_Pstar": self.yprime_is_Pstar,
            "divisors_match_dual_partition": self.divisors_match,
            "is_bundle": self.is_bundle,
            "section_ok": self.section_ok,
            "analysis": self.analysis.to_json(),
            "bb_dual": self.bb.to_json(),
            "conventions": ["w_BB includes the zero terms 0_j with coefficient 1 (imaginary lift 0)"],
        }


def bb_mirror_via_duality(N: NefData, K=None) -> BBReport:
    """Dualize the LG model of ``w_BB`` and compare with the dual nef partition."""
    v = nef_subpartition_check(N)
    if not v.calabi_yau:
        raise NefError("the collection is not Calabi-Yau: " + "; ".join(v.reasons))
    if not v.valid:
        raise NefError("not a nef sub-partition: " + "; ".join(v.reasons))
    bb = bb_dual(N)
    K = K if K is not None else (0,) * N.base.r
    M = build_lg(N.bundle(), K, wbb_section(N))
    A = analyze(M)
    rep = A.report
    n = N.base.dim
    Y = rep.yprime
    if Y is None:
        raise ConsistencyError(f"(d', alpha') is not kopasetic ({rep.yprime_failure})")
    Pprime = Polyhedron(Y.div, tuple(Y.k_alpha), n)
    same_P = canonical_form(Pprime) == canonical_form(bb.Pstar)
    # k(D'_j) against D*_j, ray by ray
    dual_rays = bb.dual.base.div
    match = True
    for j in range(N.c):
        want = {ray: bb.dual.parts[j][i] for i, ray in enumerate(dual_rays)}
        got = {}
        for row, x in zip(Y.div, Y.Dprime_classes[j]):
            got[tuple(row)] = x
        if got != want:
            match = False
    sec = bool(rep.section_ok) and section_rows_check(M.A.matrix, n, N.c, Y)
    return BBReport(A, bb, same_P, match, bool(rep.is_bundle), sec)
