"""Givental and Hori-Vafa presentations of the dual of a sigma-built model.

The relations of ``H'_Q`` are the rows of the cokernel projection
``[m | -d]`` of ``div_X``; the variable ``x_v`` goes to ``q_v`` times the
character given by row ``v`` of ``div_X`` and ``y_j`` to the fiber
character.  Lifts ``t`` live in the free part of ``coker(div_Y)`` and are
never exponentiated: ``Q_i = prod q_v^{m_iv}`` is checked as ``m T = I``
on representatives ``t_hat = T t``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .. import exactlinalg as xl
from .. import lp
from ..errors import ConsistencyError
from ..lineardata import ToricLGModel
from ..sigma import SigmaBlocks


@dataclass(frozen=True)
class Relation:
    m: tuple  # exponents of x
    d: tuple  # exponents of y
    index: int  # Q_index, 1-based

    def text(self, xs: Sequence[str], ys: Sequence[str]) -> str:
        lhs, rhs = [], [f"Q{self.index}"]
        for name, e in zip(xs, self.m):
            if e:
                (lhs if e > 0 else rhs).append(_power(name, abs(e)))
        for name, e in zip(ys, self.d):
            if e:
                (rhs if e > 0 else lhs).append(_power(name, abs(e)))
        return f"{'*'.join(lhs) or '1'} = {'*'.join(rhs)}"


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    num = [_power(a, e) for a, e in zip(names, exps) if e > 0]
    den = [_power(a, -e) for a, e in zip(names, exps) if e < 0]
    s = "*".join(num) or "1"
    if den:
        s += "/" + ("*".join(den) if len(den) == 1 else "(" + "*".join(den) + ")")
    return s


def _prime_names(n: int, c: int) -> tuple:
    base = ("x", "y", "z")[:n] if n <= 3 else tuple(f"u{i + 1}" for i in range(n))
    fib = ("xi",) if c == 1 else tuple(f"xi{j + 1}" for j in range(c))
    return tuple(s + "'" for s in base + fib)


@dataclass(frozen=True)
class GiventalPresentation:
    x_names: tuple
    y_names: tuple
    m: tuple  # f x r
    d: tuple  # f x c
    relations: tuple
    t_hat: tuple  # r x f, m * t_hat = I
    exponents: tuple  # row v of div_X: the X' character of variable v
    prime_names: tuple
    t: tuple  # class coordinates of K; t_i = 2 pi i K_i
    certificate: dict

    @property
    def F(self) -> str:
        return " + ".join(self.x_names + self.y_names)

    def q_hat_text(self, v: int) -> str:
        """``q_v`` as a monomial in the ``Q_i``; exact only because ``t_hat`` is integral."""
        return _monomial([f"Q{i + 1}" for i in range(len(self.m))], self.t_hat[v])

    def variable_map(self) -> tuple:
        out = []
        r = len(self.x_names)
        for v, name in enumerate(self.x_names + self.y_names):
            mono = _monomial(self.prime_names, self.exponents[v])
            if v < r:
                q = self.q_hat_text(v)
                if q != "1":
                    mono = q if mono == "1" else (f"{q}*{mono}" if not mono.startswith("1/") else f"{q}{mono[1:]}")
            out.append((name, mono))
        return tuple(out)

    def to_json(self) -> dict:
        xs, ys = self.x_names, self.y_names
        return {
            "variables": list(xs + ys),
            "relations": [
                {"Q": f"Q{R.index}", "x_exponents": list(R.m), "y_exponents": list(R.d), "text": R.text(xs, ys)}
                for R in self.relations
            ],
            "m": [list(r) for r in self.m],
            "d": [list(r) for r in self.d],
            "F": self.F,
            "variable_map": [{"variable": a, "image": b, "exponent": list(e), "t_hat": [str(x) for x in th]}
                             for (a, b), e, th in zip(self.variable_map(), self.exponents, list(self.t_hat) + [()] * len(ys))],
            "t_hat": [list(r) for r in self.t_hat],
            "t_from_K": [{"re": xl.format_fraction(c.re), "im": xl.format_fraction(c.im)} for c in self.t],
            "certificate": self.certificate,
        }


def _sign_normalize(rows, r: int):
    """Make each row's ``d`` part nonnegative when it has one sign (``[m | -d]`` convention)."""
    out = []
    for row in rows:
        negd = row[r:]
        lead = next((x for x in negd if x), None)
        if lead is None:
            lead = -next((x for x in row[:r] if x), 1)
        out.append(tuple(-x for x in row) if lead > 0 else tuple(row))
    return tuple(out)


def _t_hat(m, r: int, f: int):
    """Integer ``T`` with ``m T = I``, supported on the last unimodular column set when one exists."""
    if f == 0:
        return tuple(() for _ in range(r))
    for cols in reversed(list(itertools.combinations(range(r), f))):
        sub = tuple(tuple(row[c] for c in cols) for row in m)
        if abs(xl.determinant(sub)) == 1:
            inv = xl.unimodular_inverse(sub)
            T = [[0] * f for _ in range(r)]
            for k, c in enumerate(cols):
                T[c] = list(inv[k])
            return tuple(tuple(row) for row in T)
    return xl.right_inverse(m)


def _check_model(M: ToricLGModel) -> SigmaBlocks:
    if not isinstance(M.blocks, SigmaBlocks) or M.orientation != "sigma":
        raise ValueError("a sigma-built model is required")
    M.blocks.bundle.base.coker.require_torsion_free()
    M.A.coker.require_torsion_free()
    return M.blocks


def givental_presentation(M: ToricLGModel) -> GiventalPresentation:
    blocks = _check_model(M)
    B = blocks.bundle
    r, c, n = B.base.r, B.c, B.n
    P = M.A.coker
    rows = _sign_normalize(P.projection, r)
    f = len(rows)
    m = tuple(row[:r] for row in rows)
    d = tuple(tuple(-x for x in row[r:]) for row in rows)
    xs = tuple(f"x{v + 1}" for v in range(r))
    ys = tuple(f"y{j + 1}" for j in range(c))
    rels = tuple(Relation(m[i], d[i], i + 1) for i in range(f))
    T = _t_hat(m, r, f)
    mT = xl.matmul(m, T, r) if f else ()
    same_lattice = xl.hermite_normal_form(rows) == xl.hermite_normal_form(P.projection) if f else True
    # t is the class of K; a row flipped by the sign rule flips its coordinate
    t = tuple(tc if row == prow else -tc for row, prow, tc in zip(rows, P.projection, P.project_lift(M.A.lift)))
    cert = {
        "relations_are_cokernel_rows": same_lattice,
        "m_t_hat_is_identity": mT == xl.identity(f),
        "variable_count": r + c,
    }
    if not all(v for v in cert.values() if isinstance(v, bool)):
        raise ConsistencyError(f"Givental presentation failed its own checks: {cert}")
    exps = tuple(tuple(row) for row in M.A.matrix)
    return GiventalPresentation(xs, ys, m, d, rels, T, exps, _prime_names(n, c), t, cert)


@dataclass(frozen=True)
class HVCertificate:
    weights: tuple  # frak m
    degrees: tuple  # frak d
    t_hv: tuple  # frak t = -t
    m_equal: bool
    d_equal: bool
    t_sign: bool

    @property
    def ok(self) -> bool:
        return self.m_equal and self.d_equal and self.t_sign

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "weights": [list(r) for r in self.weights],
            "degrees": [list(r) for r in self.degrees],
            "t_hv": [{"re": xl.format_fraction(c.re), "im": xl.format_fraction(c.im)} for c in self.t_hv],
            "weights_equal_m": self.m_equal,
            "degrees_equal_d": self.d_equal,
            "t_hv_equals_minus_t": self.t_sign,
        }


def hv_presentation(M: ToricLGModel) -> tuple[GiventalPresentation, HVCertificate]:
    """The Hori-Vafa weights, found from the torus acting on ``C^r``, compared with Givental's data."""
    G = givental_presentation(M)
    B = M.blocks.bundle
    r = B.base.r
    # weights: integer kernel of div_Y^T, i.e. characters of the torus acting on C^r
    W = xl.kernel_basis(xl.transpose(B.base.div, B.n), r)
    W = xl.hermite_normal_form(W) if W else ()
    degs = tuple(tuple(sum(a * b for a, b in zip(w, D)) for D in B.divisors) for w in W)
    W, degs = _hv_sign(W, degs)
    t_hv = tuple(-x for x in G.t)
    cert = HVCertificate(W, degs, t_hv, W == G.m, degs == G.d, all(a + b == xl.CZ() for a, b in zip(G.t, t_hv)))
    if not cert.ok:
        raise ConsistencyError("Hori-Vafa weights differ from the Givental exponents")
    return G, cert


def _hv_sign(W, degs):
    outW, outD = [], []
    for w, dg in zip(W, degs):
        lead = next((x for x in dg if x), None)
        if lead is None:
            lead = next((x for x in w if x), 1)
        s = 1 if lead > 0 else -1
        outW.append(tuple(s * x for x in w))
        outD.append(tuple(s * x for x in dg))
    return tuple(outW), tuple(outD)


# ---------------------------------------------------------------------------
# semigroup generation


@dataclass(frozen=True)
class SemigroupVerdict:
    ok: bool
    bound: int
    checked: int
    counterexample: tuple | None
    warnings: tuple

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "bound": self.bound,
            "cone_points_checked": self.checked,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
            "warnings": list(self.warnings),
        }


def _in_cone(rows, p) -> bool:
    k = len(rows)
    A_eq = [[rows[i][a] for i in range(k)] for a in range(len(p))]
    return lp.feasible_point(A_eq=A_eq, b_eq=list(p), nvars=k, nonneg=True) is not None


def semigroup_generation_check(M_or_rows, bound: int = 4, smooth: bool | None = None) -> SemigroupVerdict:
    """Every lattice point of ``cone(rows)`` in ``[-bound, bound]^n`` is a sum of rows.

    The rows are the A side of a sigma-built model (the terms of ``W'``).
    Membership is decided by breadth-first search over sums of rows, cut
    off by a functional positive on every row.
    """
    warnings = []
    if isinstance(M_or_rows, ToricLGModel):
        M = M_or_rows
        rows = M.A.matrix
        n = M.A.ncols
        if smooth is None and isinstance(M.blocks, SigmaBlocks):
            smooth = M.blocks.bundle.base.smooth
    else:
        rows = xl.as_matrix(M_or_rows)
        n = len(rows[0])
    if not smooth:
        warnings.append("the base is not asserted smooth; generation may fail for singular cones")
    rows = [tuple(r) for r in rows]
    k = len(rows)
    # h with h.row >= 1 for every row, minimizing the sum of h.row
    A_ub = [[-x for x in row] for row in rows]
    obj = [-sum(row[a] for row in rows) for a in range(n)]
    res = lp.linprog(obj, A_ub=A_ub, b_ub=[-1] * k, nonneg=False)
    if res.status != lp.OPTIMAL:
        warnings.append("the rows do not span a pointed cone; no truncation functional exists")
        return SemigroupVerdict(False, bound, 0, None, tuple(warnings))
    h = res.x
    hv = lambda p: sum(a * b for a, b in zip(h, p))
    box = [p for p in itertools.product(range(-bound, bound + 1), repeat=n) if _in_cone(rows, p)]
    box.sort(key=lambda p: (hv(p), p))
    top = max(hv(p) for p in box) if box else 0
    seen = {(0,) * n}
    queue = deque([(0,) * n])
    while queue:
        p = queue.popleft()
        for row in rows:
            q = tuple(a + b for a, b in zip(p, row))
            if q not in seen and hv(q) <= top:
                seen.add(q)
                queue.append(q)
    for p in box:
        if p not in seen:
            return SemigroupVerdict(False, bound, len(box), p, tuple(warnings))
    return SemigroupVerdict(True, bound, len(box), None, tuple(warnings))
