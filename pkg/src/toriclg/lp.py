"""Exact rational linear programming.

A dense two-phase simplex over :class:`fractions.Fraction` with Bland's
rule, so it always terminates.  The problems solved here are tiny (a few
dozen variables) which makes exactness cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(T, r, c):
    pv = T[r][c]
    if pv != 1:
        T[r] = [x / pv for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                T[i] = [a - f * b for a, b in zip(T[i], row)]


def _simplex(T, basis, cost, allowed):
    """Maximize ``cost . y`` on tableau ``T`` (last column is the rhs)."""
    rhs = len(T[0]) - 1
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            red = cost[j] - sum(cost[b] * T[i][j] for i, b in enumerate(basis))
            if red > 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[rhs] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        r = best[1]
        _pivot(T, r, entering)
        basis[r] = entering


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | bool = False,
) -> LPResult:
    """Maximize ``c . x`` subject to ``A_ub x <= b_ub`` and ``A_eq x == b_eq``.

    Variables are free unless flagged in ``nonneg`` (a bool applies to all).
    """
    n = len(c)
    if isinstance(nonneg, bool):
        nonneg = [nonneg] * n
    # column layout: for each x_i, a "+" column, and a "-" column if free
    cols = []  # (var index, sign)
    for i in range(n):
        cols.append((i, 1))
        if not nonneg[i]:
            cols.append((i, -1))
    nx = len(cols)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    nslack = m_ub
    nart = m
    width = nx + nslack + nart + 1
    T = []
    for k in range(m):
        if k < m_ub:
            a, b = A_ub[k], b_ub[k]
        else:
            a, b = A_eq[k - m_ub], b_eq[k - m_ub]
        row = [Fraction(0)] * width
        for j, (i, s) in enumerate(cols):
            row[j] = Fraction(a[i]) * s
        if k < m_ub:
            row[nx + k] = Fraction(1)
        row[-1] = Fraction(b)
        if row[-1] < 0:
            row = [-x for x in row]
        row[nx + nslack + k] = Fraction(1)
        T.append(row)

    art = range(nx + nslack, nx + nslack + nart)
    basis = list(art)
    cost1 = [Fraction(0)] * (width - 1)
    for j in art:
        cost1[j] = Fraction(-1)
    if m:
        _simplex(T, basis, cost1, range(width - 1))
        if sum(T[i][-1] for i, b in enumerate(basis) if b in art) != 0:
            return LPResult(INFEASIBLE)
        # drive artificials out of the basis
        keep = []
        for i, b in enumerate(basis):
            if b in art:
                j = next((j for j in range(nx + nslack) if T[i][j] != 0), None)
                if j is None:
                    continue  # redundant equality
                _pivot(T, i, j)
                basis[i] = j
            keep.append(i)
        T = [T[i] for i in keep]
        basis = [basis[i] for i in keep]

    cost2 = [Fraction(0)] * (width - 1)
    for j, (i, s) in enumerate(cols):
        cost2[j] = Fraction(c[i]) * s
    status = _simplex(T, basis, cost2, range(nx + nslack)) if T else None
    if status is None:
        # no constraints: bounded only if the objective vanishes on free directions
        if any(cost2[j] > 0 for j in range(nx)):
            return LPResult(UNBOUNDED)
        status = OPTIMAL
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * (width - 1)
    for i, b in enumerate(basis):
        y[b] = T[i][-1]
    x = [Fraction(0)] * n
    for j, (i, s) in enumerate(cols):
        x[i] += s * y[j]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, tuple(x), value)


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvars: int = 0, nonneg=False) -> tuple[Fraction, ...] | None:
    """Any point of the constraint set, or None."""
    res = linprog([0] * nvars, A_ub, b_ub, A_eq, b_eq, nonneg)
    return res.x if res.status == OPTIMAL else None
