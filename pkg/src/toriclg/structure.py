"""Structure of the dual of a sigma-built LG model.

The dual A side ``A' = mon`` has the block form ``[[d', D'], [0, Id]]``.
From ``(d', alpha')`` we get a toric variety ``Y'`` and divisors
``k(D'_j)``; the question is whether the dual variety ``X'`` is the total
space ``E'`` of the corresponding split bundle, and whether the dual
superpotential comes from a section of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exactlinalg as xl
from .lineardata import (
    KopaseticReport,
    LinearData,
    NotKopaseticError,
    ToricLGModel,
    dualize,
    kopasetic_check,
)
from .errors import ConsistencyError
from .polyhedra import Polyhedron, PointSet, canonical_form, facet_rows, vertex_test_with_ray
from .polyhedra import lattice_points
from .sigma import SigmaBlocks, order_points

SECTION_CAP = 10**7

FOUND = "found"
ABSENT = "absent"
TRUNCATED = "truncated"

SCALED = "scaled"
FACET = "facet"


class BlockError(ValueError):
    pass


@dataclass(frozen=True)
class DualBlocks:
    """``A' = [[d', D'], [0, Id]]`` with the row splitting it came from.

    ``nonzero_rows`` index the rows of ``A'`` forming ``d'``/``D'`` and
    ``zero_rows[j]`` the row ``0_j``.
    """

    d_prime: tuple
    D_prime: tuple
    n: int
    c: int
    nonzero_rows: tuple[int, ...]
    zero_rows: tuple[int, ...]
    terms: tuple  # (j, nu) per nonzero row
    A_prime: tuple

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.D_prime)

    def reassemble(self) -> tuple:
        top = [tuple(a) + tuple(b) for a, b in zip(self.d_prime, self.D_prime)]
        bottom = [(0,) * self.n + tuple(int(k == j) for k in range(self.c)) for j in range(self.c)]
        return tuple(top + bottom)

    def to_json(self) -> dict:
        return {
            "d_prime": [list(r) for r in self.d_prime],
            "D_prime": [list(r) for r in self.D_prime],
            "nonzero_rows": list(self.nonzero_rows),
            "zero_rows": list(self.zero_rows),
        }


def extract_blocks(M_dual: ToricLGModel) -> DualBlocks:
    blocks = M_dual.blocks
    if not isinstance(blocks, SigmaBlocks) or M_dual.orientation != "dual":
        raise BlockError("block analysis needs the dual of a sigma-built model")
    A = M_dual.A.matrix
    n, c = blocks.n, blocks.c
    if len(A) != len(blocks.terms):
        raise BlockError("dual A side does not match the recorded terms")
    nz = blocks.nonzero_rows
    zr_by_j = {}
    for i in blocks.zero_rows:
        j = blocks.terms[i][0]
        if j in zr_by_j:
            raise BlockError(f"summand {j + 1} has two zero terms")
        zr_by_j[j] = i
    if sorted(zr_by_j) != list(range(c)):
        missing = [j + 1 for j in range(c) if j not in zr_by_j]
        raise BlockError(f"no zero term for summand(s) {missing}; the identity block is missing")
    zr = tuple(zr_by_j[j] for j in range(c))
    if list(nz) + list(zr) != list(range(len(A))):
        raise BlockError("rows are not in block order (nonzero terms, then 0_1..0_c)")
    d = tuple(tuple(A[i][:n]) for i in nz)
    D = tuple(tuple(A[i][n:]) for i in nz)
    for j, i in enumerate(zr):
        if any(A[i][:n]) or tuple(A[i][n:]) != tuple(int(k == j) for k in range(c)):
            raise BlockError(f"row {i} is not the block row 0_{j + 1}")
    out = DualBlocks(d, D, n, c, nz, zr, tuple(blocks.terms[i] for i in nz), A)
    if out.reassemble() != A:
        raise BlockError("block reassembly does not reproduce A'")
    return out


def normalize_alpha(blocks: DualBlocks, im: Sequence) -> tuple[Fraction, ...]:
    """The lift ``(alpha', 0)`` in the class of ``im`` (a lift on all rows of A').

    Subtracting ``A'(0, beta_0)`` clears the ``0_j`` entries.
    """
    im = [Fraction(x) for x in im]
    beta0 = [im[i] for i in blocks.zero_rows]
    return tuple(im[i] - sum(Fraction(D) * b for D, b in zip(blocks.D_prime[k], beta0)) for k, i in enumerate(blocks.nonzero_rows))


def full_lift(blocks: DualBlocks, alpha_prime: Sequence) -> tuple[Fraction, ...]:
    """``(alpha', 0)`` laid out on the rows of A'."""
    out = [Fraction(0)] * len(blocks.A_prime)
    for k, i in enumerate(blocks.nonzero_rows):
        out[i] = Fraction(alpha_prime[k])
    return tuple(out)


def suggest_kopasetic_lift(d_prime: Sequence[Sequence[int]], n: int | None = None, rounds: int = 8):
    """A positive ``alpha'`` making ``(d', alpha')`` kopasetic, or None.

    All ones comes first.  When a non-primitive row is a facet, its offset
    is pushed out (to ``2 * gcd`` and then doubled) so that a primitive row
    with the same direction, if there is one, takes over.
    """
    d = xl.as_matrix(d_prime)
    n = len(d[0]) if d else (n or 0)
    if not d:
        return ()
    alpha = [Fraction(1)] * len(d)
    for step in range(rounds):
        rep = kopasetic_check(LinearData.from_im(d, alpha, n))
        if rep.verdict:
            return tuple(alpha)
        if rep.reason != "non-primitive-facet":
            return None
        for i in rep.primitivity_failures:
            g = xl.gcd_list(d[i])
            alpha[i] = 2 * g if step == 0 else alpha[i] * 2
    return None


@dataclass(frozen=True)
class YPrime:
    div: tuple
    facet_rows: tuple[int, ...]  # indices into the rows of d'
    report: KopaseticReport
    k_alpha: tuple
    Dprime_classes: tuple  # k(D'_j), one vector per j

    def to_json(self) -> dict:
        return {
            "div": [list(r) for r in self.div],
            "facet_rows": list(self.facet_rows),
            "k_alpha": [xl.format_fraction(x) for x in self.k_alpha],
            "Dprime_classes": [list(v) for v in self.Dprime_classes],
        }


def build_yprime(blocks: DualBlocks, alpha_prime: Sequence) -> YPrime:
    """``Y' = X(d', alpha')`` and the pushed divisors ``k(D'_j)``."""
    rep = kopasetic_check(LinearData.from_im(blocks.d_prime, alpha_prime, blocks.n))
    if not rep.verdict:
        raise NotKopaseticError(rep, "(d', alpha')")
    div = rep.apply_k(blocks.d_prime)
    kD = tuple(rep.apply_k(blocks.column(j)) for j in range(blocks.c))
    return YPrime(div, rep.facet_indices, rep, rep.apply_k(tuple(Fraction(a) for a in alpha_prime)), kD)


@dataclass(frozen=True)
class VjData:
    """Vertex data for summand ``j``.

    ``vx`` lists ``(k, nu, point)`` for the elements of ``V_j^x``; ``k`` is
    the index into the rows of ``d'`` and ``point`` is ``(nu, 1)/alpha'``
    (None on the facet path).
    """

    j: int
    generators: PointSet | None
    vx: tuple
    path: str


def _x_prime_polytope(blocks: DualBlocks, alpha_prime) -> Polyhedron:
    return Polyhedron(blocks.A_prime, full_lift(blocks, alpha_prime), blocks.n + blocks.c)


def compute_Vj(blocks: DualBlocks, alpha_prime: Sequence) -> tuple[VjData, ...]:
    """``V_j^x`` for every summand.

    With ``alpha' > 0`` these are the nonzero vertices of
    ``conv({(nu, 1)/alpha'_nu} | {0}) + cone((0, 1))``.  When some entries
    vanish the scaling is undefined and ``V_j^x`` is read off as the rows
    of ``d'`` that are facets of the ``X'`` polytope.
    """
    alpha = [Fraction(a) for a in alpha_prime]
    if len(alpha) != len(blocks.d_prime):
        raise xl.ShapeError("alpha' needs one entry per nonzero term")
    if any(a < 0 for a in alpha):
        raise ValueError("alpha' must be nonnegative: the lift (alpha', 0) is taken with 0 inside Y''s polytope")
    n = blocks.n
    out = []
    if all(a > 0 for a in alpha):
        for j in range(blocks.c):
            rows = [k for k, (jj, _) in enumerate(blocks.terms) if jj == j]
            pts = {}
            for k in rows:
                nu = blocks.d_prime[k]
                p = tuple(Fraction(x) / alpha[k] for x in nu) + (1 / alpha[k],)
                pts.setdefault(p, k)
            zero = (Fraction(0),) * (n + 1)
            S = PointSet(tuple(pts) + (zero,), ((0,) * n + (1,),), n + 1)
            vx = tuple((k, blocks.d_prime[k], p) for p, k in pts.items() if vertex_test_with_ray(S, p))
            out.append(VjData(j, S, tuple(sorted(vx)), SCALED))
        return tuple(out)
    X = _x_prime_polytope(blocks, alpha)
    info = facet_rows(X)
    for j in range(blocks.c):
        vx = tuple(
            (k, blocks.d_prime[k], None)
            for k, i in enumerate(blocks.nonzero_rows)
            if blocks.terms[k][0] == j and info.representative[i] == i
        )
        out.append(VjData(j, None, vx, FACET))
    return tuple(out)


def _q_vertex_flags(blocks: DualBlocks, alpha, Vs) -> dict:
    """For every nonzero row of d', whether ``nu / alpha'`` is a nonzero vertex of Q."""
    n = blocks.n
    qpts = [(Fraction(0),) * n]
    for V in Vs:
        qpts.extend(tuple(p[:n]) for _, _, p in V.vx)
    Q = PointSet(tuple(qpts), (), n)
    flags = {}
    for k, nu in enumerate(blocks.d_prime):
        p = tuple(Fraction(x) / alpha[k] for x in nu)
        if p in Q.points and any(p):
            flags[k] = vertex_test_with_ray(Q, p)
        else:
            flags[k] = False
    return flags


@dataclass(frozen=True)
class SectionResult:
    status: str
    witness: tuple | None
    tuples_visited: int
    class_matches: bool

    @property
    def ok(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else [list(x) for x in self.witness],
            "tuples_visited": self.tuples_visited,
            "class_matches_anticanonical": self.class_matches,
        }


def section_search(div, divisors: Sequence[Sequence[int]], n: int, cap: int = SECTION_CAP) -> SectionResult:
    """Search ``xi_j in P_{D_j}`` with ``sum_j (D_j + div xi_j) = (1, .., 1)``.

    Each summand ``D_j + div xi_j`` is effective, so partial sums above 1
    are pruned.  Whether ``sum D_j`` and the all-ones vector differ by an
    element of ``div(M)`` is reported as an independent necessary condition.
    """
    div = xl.as_matrix(div)
    r = len(div)
    divisors = [tuple(int(x) for x in D) for D in divisors]
    cands = []
    for D in divisors:
        opts = []
        for xi in order_points(lattice_points(Polyhedron(div, D, n))):
            v = tuple(a + b for a, b in zip(D, xl.matvec(div, xi))) if div else tuple(D)
            if all(x <= 1 for x in v):
                opts.append((xi, v))
        cands.append(opts)

    total = tuple(sum(col) for col in zip(*divisors)) if divisors else (0,) * r
    gap = tuple(1 - t for t in total)
    class_ok = xl.solve_integer(div, gap, n) is not None if r else True

    visited = 0
    found = None
    truncated = False

    def rec(j, acc, chosen):
        nonlocal visited, found, truncated
        if found is not None or truncated:
            return
        if j == len(divisors):
            visited += 1
            if visited > cap:
                truncated = True
                return
            if all(x == 1 for x in acc):
                found = tuple(chosen)
            return
        for xi, v in cands[j]:
            s = tuple(a + b for a, b in zip(acc, v))
            if any(x > 1 for x in s):
                visited += 1
                continue
            rec(j + 1, s, chosen + [xi])

    rec(0, (0,) * r, [])
    if found is not None:
        if not class_ok:
            raise ConsistencyError("section witness found although the classes differ")
        return SectionResult(FOUND, found, visited, class_ok)
    return SectionResult(TRUNCATED if truncated else ABSENT, None, visited, class_ok)


def section_test(M: ToricLGModel, cap: int = SECTION_CAP) -> SectionResult:
    """Whether the dual superpotential comes from a global section (sigma-built ``M``)."""
    blocks = M.blocks
    if not isinstance(blocks, SigmaBlocks):
        raise BlockError("section test needs a sigma-built model")
    B = blocks.bundle
    return section_search(B.base.div, B.divisors, B.n, cap)


def section_rows_check(div_X: Sequence[Sequence[int]], n: int, c: int, Y: "YPrime") -> bool:
    """Direct reading on ``E'``: every term of ``W'`` is ``(u, e_j)`` with ``u`` in ``P_{k(D'_j)}``.

    The terms of ``W'`` are the rows of ``div_X``; this needs no change of
    basis, so it certifies a section but its failure alone proves nothing.
    """
    for row in xl.as_matrix(div_X):
        u, s = row[:n], row[n:]
        if sorted(s) != [0] * (c - 1) + [1]:
            return False
        j = s.index(1)
        if not Polyhedron(Y.div, Y.Dprime_classes[j], n).contains(u):
            return False
    return True


@dataclass(frozen=True)
class BundleReport:
    alpha_prime: tuple
    path: str
    yprime: YPrime | None
    yprime_failure: str | None
    vx: tuple  # per j: tuple of (k, nu)
    failing_elements: tuple  # (j, nu)
    is_bundle: bool | None
    row_theorem_ok: bool | None
    facets_match_E: bool | None
    local_cy_X: bool
    local_cy_E: bool | None
    section: SectionResult | None = None
    section_rows_ok: bool | None = None

    @property
    def section_ok(self) -> bool | None:
        return None if self.section is None else self.section.ok

    def to_json(self) -> dict:
        return {
            "alpha_prime": [xl.format_fraction(a) for a in self.alpha_prime],
            "vertex_path": self.path,
            "yprime": None if self.yprime is None else self.yprime.to_json(),
            "yprime_failure": self.yprime_failure,
            "V_cross": [[{"row": k, "nu": list(nu)} for k, nu in V] for V in self.vx],
            "failing_elements": [{"j": j, "nu": list(nu)} for j, nu in self.failing_elements],
            "is_bundle": self.is_bundle,
            "row_theorem_ok": self.row_theorem_ok,
            "facets_match_E": self.facets_match_E,
            "local_calabi_yau": {"X_prime": self.local_cy_X, "E_prime": self.local_cy_E},
            "section_ok": self.section_ok,
            "section": None if self.section is None else self.section.to_json(),
            "section_rows_ok": self.section_rows_ok,
        }


def _anticanonical_trivial(div) -> bool:
    div = xl.as_matrix(div)
    return xl.solve_integer(div, (1,) * len(div)) is not None


def div_E_prime(blocks: DualBlocks, Y: YPrime) -> tuple:
    top = [tuple(Y.div[i]) + tuple(Y.Dprime_classes[j][i] for j in range(blocks.c)) for i in range(len(Y.div))]
    bottom = [(0,) * blocks.n + tuple(int(k == j) for k in range(blocks.c)) for j in range(blocks.c)]
    return tuple(top + bottom)


def is_bundle(blocks: DualBlocks, alpha_prime: Sequence, yprime: YPrime | None = None) -> BundleReport:
    """Decide ``X' = E'`` by the vertex criterion (section data left empty)."""
    alpha = tuple(Fraction(a) for a in alpha_prime)
    Vs = compute_Vj(blocks, alpha)
    path = Vs[0].path if Vs else SCALED
    Xp = _x_prime_polytope(blocks, alpha)
    xinfo = facet_rows(Xp)
    divX = tuple(blocks.A_prime[i] for i in xinfo.facets)
    cy_X = _anticanonical_trivial(divX)

    Y = yprime
    failure = None
    if Y is None:
        try:
            Y = build_yprime(blocks, alpha)
        except NotKopaseticError as e:
            failure = e.report.reason
    vx = tuple(tuple((k, nu) for k, nu, _ in V.vx) for V in Vs)
    if Y is None:
        return BundleReport(alpha, path, None, failure, vx, (), None, None, None, cy_X, None, None)

    yrep = facet_rows(rep_polytope(blocks, alpha)).representative
    in_Y = {k for k in range(len(blocks.d_prime)) if yrep[k] is not None}
    if path == SCALED:
        flags = _q_vertex_flags(blocks, alpha, Vs)
        failing = tuple((V.j, nu) for V in Vs for k, nu, _ in V.vx if not flags[k])
        row_ok = all(flags[k] == (k in in_Y) for k in range(len(blocks.d_prime)))
    else:
        failing = tuple((V.j, nu) for V in Vs for k, nu, _ in V.vx if k not in in_Y)
        row_ok = None
    ok = not failing
    E = div_E_prime(blocks, Y)
    Epoly = Polyhedron(E, tuple(Y.k_alpha) + (Fraction(0),) * blocks.c, blocks.n + blocks.c)
    match = canonical_form(Epoly) == canonical_form(Xp)
    if ok and not match:
        raise ConsistencyError("vertex criterion says X' = E' but the facet systems differ")
    cy_E = _anticanonical_trivial(E)
    return BundleReport(alpha, path, Y, None, vx, failing, ok, row_ok, match, cy_X, cy_E, None)


def rep_polytope(blocks: DualBlocks, alpha) -> Polyhedron:
    return Polyhedron(blocks.d_prime, tuple(alpha), blocks.n)


@dataclass(frozen=True)
class Analysis:
    dual: ToricLGModel
    blocks: DualBlocks
    report: BundleReport

    def to_json(self) -> dict:
        return {"blocks": self.blocks.to_json(), "bundle": self.report.to_json()}


def dual_with_alpha(M: ToricLGModel, alpha_prime: Sequence | None = None) -> ToricLGModel:
    """Dualize, optionally replacing ``Im(L)`` by ``(alpha', 0)`` in block layout."""
    if alpha_prime is None:
        return dualize(M)
    blocks = M.blocks
    if not isinstance(blocks, SigmaBlocks):
        raise BlockError("alpha' override needs a sigma-built model")
    nz = blocks.nonzero_rows
    if len(alpha_prime) == len(M.B.matrix):
        im = [Fraction(a) for a in alpha_prime]
    elif len(alpha_prime) == len(nz):
        im = [Fraction(0)] * len(M.B.matrix)
        for k, i in enumerate(nz):
            im[i] = Fraction(alpha_prime[k])
    else:
        raise xl.ShapeError(f"alpha' has {len(alpha_prime)} entries; expected {len(nz)} or {len(M.B.matrix)}")
    lift = tuple(xl.CZ(c.re, b) for c, b in zip(M.B.lift, im))
    return dualize(ToricLGModel(M.A, M.B.with_lift(lift), M.blocks, M.orientation, M.a_realized))


def analyze(M: ToricLGModel, alpha_prime: Sequence | None = None) -> Analysis:
    """Dualize a sigma-built model and run the full structure analysis."""
    dual = dual_with_alpha(M, alpha_prime)
    blocks = extract_blocks(dual)
    alpha = normalize_alpha(blocks, dual.A.im)
    rep = is_bundle(blocks, alpha)
    sec = section_test(M)
    rows_ok = None
    if rep.yprime is not None and rep.is_bundle:
        rows_ok = section_rows_check(M.A.matrix, blocks.n, blocks.c, rep.yprime)
        if rows_ok and not sec.ok:
            raise ConsistencyError("terms of W' are sections on E' but no effective representatives were found")
    rep = BundleReport(**{**rep.__dict__, "section": sec, "section_rows_ok": rows_ok})
    return Analysis(dual, blocks, rep)


def double_dual_diff(M: ToricLGModel):
    """``(double dual, deleted B rows)``; the A side is left untouched."""
    D1 = dualize(M)
    D2 = dualize(D1)
    deleted = tuple(i for i, v in enumerate(D1.a_report.k_row_map) if v is None)
    kept = tuple(M.B.matrix[i] for i in range(len(M.B.matrix)) if i not in deleted)
    if D2.B.matrix != kept or D2.A.matrix != M.A.matrix:
        raise ConsistencyError("double dual is not the original with k-dropped terms removed")
    return D2, deleted
