"""Linear data, toric LG models and their duality.

A :class:`LinearData` is an integer matrix ``C: Z^n -> Z^t`` together with
a lift to ``(C/Z)^t`` of a class in ``coker(C)``.  The pair ``(div, K)``
describes a toric variety with a complexified Kaehler class and the pair
``(mon, L)`` a superpotential; a :class:`ToricLGModel` holds one of each
and :func:`dualize` swaps them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Any, Sequence

from . import exactlinalg as xl
from .exactlinalg import CZ
from .polyhedra import Polyhedron, facet_rows, interior_point, is_empty

# reason codes for a failed kopasetic check
OK = "ok"
EMPTY = "empty"
EMPTY_INTERIOR = "empty-interior"
NON_PRIMITIVE = "non-primitive-facet"


class NotKopaseticError(ValueError):
    def __init__(self, report: "KopaseticReport", what: str = "linear data"):
        super().__init__(f"{what} is not kopasetic ({report.reason})")
        self.report = report


@dataclass(frozen=True)
class LinearData:
    matrix: tuple
    lift: tuple
    ncols: int = -1
    labels: tuple | None = None

    def __post_init__(self):
        M = xl.as_matrix(self.matrix)
        n = len(M[0]) if M else self.ncols
        if n < 0:
            raise xl.ShapeError("an empty matrix needs an explicit column count")
        if M and self.ncols >= 0 and self.ncols != n:
            raise xl.ShapeError(f"matrix has {n} columns, not {self.ncols}")
        lift = xl.cz_vector(self.lift)
        if len(lift) != len(M):
            raise xl.ShapeError(f"lift has {len(lift)} entries for {len(M)} rows")
        if self.labels is not None and len(self.labels) != len(M):
            raise xl.ShapeError("one label per row is required")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "lift", lift)
        object.__setattr__(self, "ncols", n)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_im(cls, matrix, im, ncols: int = -1, labels=None) -> "LinearData":
        return cls(matrix, xl.imaginary_lift(im), ncols, labels)

    @property
    def nrows(self) -> int:
        return len(self.matrix)

    @property
    def im(self) -> tuple[Fraction, ...]:
        return tuple(c.im for c in self.lift)

    @property
    def re(self) -> tuple[Fraction, ...]:
        return tuple(c.re for c in self.lift)

    @cached_property
    def coker(self) -> xl.CokernelPresentation:
        return xl.cokernel(self.matrix, self.nrows, self.ncols)

    def class_coordinates(self) -> tuple[CZ, ...]:
        return self.coker.project_lift(self.lift)

    def with_lift(self, lift) -> "LinearData":
        return replace(self, lift=xl.cz_vector(lift))

    def to_json(self) -> dict:
        d: dict[str, Any] = {
            "matrix": [list(r) for r in self.matrix],
            "lift": [{"re": xl.format_fraction(c.re), "im": xl.format_fraction(c.im)} for c in self.lift],
            "ncols": self.ncols,
        }
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_json(cls, data: dict) -> "LinearData":
        M = xl.as_matrix(data["matrix"])
        lift = []
        for c in data.get("lift", [0] * len(M)):
            if isinstance(c, dict):
                lift.append(CZ(xl.parse_fraction(c.get("re", 0)), xl.parse_fraction(c.get("im", 0))))
            else:
                lift.append(CZ(0, xl.parse_fraction(c)))
        ncols = int(data.get("ncols", len(M[0]) if M else -1))
        labels = data.get("labels")
        return cls(M, tuple(lift), ncols, tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class KopaseticReport:
    """Outcome of the kopasetic test.

    ``k_row_map[i]`` is the position of row ``i`` among the facet rows, or
    None when ``k`` sends its generator to zero.
    """

    interior_witness: tuple | None
    facet_indices: tuple[int, ...]
    k_row_map: tuple[int | None, ...]
    primitivity_failures: tuple[int, ...]
    verdict: bool
    reason: str

    def apply_k(self, v: Sequence) -> tuple:
        """Push a vector on the original rows forward along ``k``."""
        return tuple(v[i] for i in self.facet_indices)

    def k_matrix(self) -> tuple:
        n = len(self.k_row_map)
        return tuple(tuple(int(j == i) for j in range(n)) for i in self.facet_indices)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "interior_witness": None if self.interior_witness is None else [xl.format_fraction(x) for x in self.interior_witness],
            "facet_rows": list(self.facet_indices),
            "k_row_map": list(self.k_row_map),
            "primitivity_failures": list(self.primitivity_failures),
        }


def polytope_of(D: LinearData) -> Polyhedron:
    """``{xi : C xi + Im(lift) >= 0}``."""
    return Polyhedron(D.matrix, D.im, D.ncols)


def kopasetic_check(D: LinearData) -> KopaseticReport:
    """Nonempty interior, and every irredundant row primitive.

    The row-selection ``k`` keeps facet rows and kills everything else,
    including duplicates of a facet row, so that ``k`` composed with the
    matrix is the div map of the resulting variety.
    """
    P = polytope_of(D)
    r = D.nrows
    if is_empty(P):
        return KopaseticReport(None, (), (None,) * r, (), False, EMPTY)
    w = interior_point(P)
    if w is None:
        return KopaseticReport(None, (), (None,) * r, (), False, EMPTY_INTERIOR)
    info = facet_rows(P)
    facets = info.facets
    pos = {i: j for j, i in enumerate(facets)}
    kmap = tuple(pos.get(i) for i in range(r))
    bad = tuple(i for i in facets if not xl.is_primitive(D.matrix[i]))
    return KopaseticReport(w, facets, kmap, bad, not bad, OK if not bad else NON_PRIMITIVE)


def realize(D: LinearData, report: KopaseticReport | None = None) -> LinearData:
    """``(k o C, k(lift))``: the div map and class of the constructed variety."""
    report = report or kopasetic_check(D)
    if not report.verdict:
        raise NotKopaseticError(report)
    labels = report.apply_k(D.labels) if D.labels is not None else None
    return LinearData(report.apply_k(D.matrix), report.apply_k(D.lift), D.ncols, labels)


@dataclass(frozen=True)
class RegularityResult:
    ok: bool
    negatives: tuple[tuple[int, int, int], ...]  # (row of A, row of B, value)
    product: tuple


def regularity_check(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int | None = None) -> RegularityResult:
    """Whether ``A B^T >= 0``; lists the negative entries otherwise."""
    A = xl.as_matrix(A)
    B = xl.as_matrix(B)
    if A and B and len(A[0]) != len(B[0]):
        raise xl.ShapeError(f"A has {len(A[0])} columns but B has {len(B[0])}")
    prod = tuple(tuple(sum(a * b for a, b in zip(ra, rb)) for rb in B) for ra in A)
    neg = tuple((i, j, v) for i, row in enumerate(prod) for j, v in enumerate(row) if v < 0)
    return RegularityResult(not neg, neg, prod)


def monomial_regular(div: Sequence[Sequence[int]], xi: Sequence[int]) -> bool:
    div = xl.as_matrix(div)
    if div and len(div[0]) != len(xi):
        raise xl.ShapeError("character length does not match the div map")
    return all(v >= 0 for v in xl.matvec(div, xi)) if div else True


def anticanonical(div_or_r) -> tuple[int, ...]:
    """The all-ones vector, one entry per ray."""
    r = div_or_r if isinstance(div_or_r, int) else len(div_or_r)
    return (1,) * r


@dataclass(frozen=True)
class Term:
    coefficient: CZ
    exponent: tuple[int, ...]

    def numeric(self, dps: int = 15) -> complex:
        return self.coefficient.numeric(dps)


def superpotential_terms(D: LinearData) -> list[Term]:
    """One term ``exp(2 pi i lambda_j) xi^{row_j}`` per row."""
    return [Term(c, tuple(row)) for c, row in zip(D.lift, D.matrix)]


def torus_shift(D1: LinearData, D2: LinearData):
    """A rational ``(t_re, t_im)`` moving the lift of ``D1`` onto that of ``D2``.

    Lifts are equivalent when they differ by ``C t`` plus an integer vector
    in the real part; returns None when no such ``t`` exists.
    """
    if D1.matrix != D2.matrix:
        raise ValueError("torus shifts compare lifts on the same matrix")
    P = D1.coker
    P.require_torsion_free()
    dim = [b.im - a.im for a, b in zip(D1.lift, D2.lift)]
    dre = [b.re - a.re for a, b in zip(D1.lift, D2.lift)]
    if any(P.project(dim)):
        return None
    pre = P.project(dre)
    if any(Fraction(x).denominator != 1 for x in pre):
        return None
    z = xl.matvec(P.section, pre) if P.free_rank else (0,) * D1.nrows
    if not D1.matrix:
        return ((), ())
    t_im = xl.solve_rational(D1.matrix, dim)
    t_re = xl.solve_rational(D1.matrix, [a - b for a, b in zip(dre, z)])
    return t_re, t_im


@dataclass(frozen=True)
class ToricLGModel:
    """An ordered pair of linear data: ``A = (div, K)`` and ``B = (mon, L)``.

    ``a_realized`` says the A-side matrix already is a div map (it came
    from a toric variety); after dualizing it is only the inequality system
    whose facet rows define the variety.  ``blocks`` carries the sigma-model
    splitting when known; ``a_report`` is the kopasetic report of the A side
    when it was computed during dualization.
    """

    A: LinearData
    B: LinearData
    blocks: Any = None
    orientation: str = "sigma"
    a_realized: bool = True
    a_report: KopaseticReport | None = None

    def __post_init__(self):
        if self.A.ncols != self.B.ncols:
            raise xl.ShapeError(f"A side has rank {self.A.ncols} but B side has rank {self.B.ncols}")
        if self.orientation not in ("sigma", "dual"):
            raise ValueError(f"unknown orientation {self.orientation!r}")


@dataclass(frozen=True)
class PairReport:
    a_report: KopaseticReport
    regularity: RegularityResult
    verdict: bool

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "A_kopasetic": self.a_report.to_json(),
            "regular": self.regularity.ok,
            "negative_entries": [list(t) for t in self.regularity.negatives],
        }


def pair_kopasetic(M: ToricLGModel) -> PairReport:
    rep = kopasetic_check(M.A)
    reg = regularity_check(M.A.matrix, M.B.matrix)
    return PairReport(rep, reg, rep.verdict and reg.ok)


def a_side_div(M: ToricLGModel) -> LinearData:
    """The A side as an honest div map with its class."""
    if M.a_realized:
        return M.A
    return realize(M.A, M.a_report)


def dualize(M: ToricLGModel) -> ToricLGModel:
    """Swap ``(A, K)`` and ``(B, L)``.

    The new B side is the div map of the old A side (its ``k`` applied when
    the A side was only an inequality system).  Raises
    :class:`NotKopaseticError` when the new A side fails the kopasetic test.
    """
    new_B = a_side_div(M)
    rep = kopasetic_check(M.B)
    if not rep.verdict:
        raise NotKopaseticError(rep, "dual A side")
    flip = "dual" if M.orientation == "sigma" else "sigma"
    return ToricLGModel(M.B, new_B, M.blocks, flip, a_realized=False, a_report=rep)
