"""Randomized property checks shared by the unit tests and the acceptance run.

Each ``prop_*`` function runs at least ``count`` seeded instances and
raises AssertionError on the first failure.  It returns the number of
instances checked.
"""

import random
from fractions import Fraction

import sympy

import oracles
from toriclg import exactlinalg as xl
from toriclg.lineardata import LinearData, dualize, kopasetic_check
from toriclg.polyhedra import (
    PointSet,
    Polyhedron,
    canonical_form,
    facet_rows,
    hull,
    lattice_points,
    polar,
    translate,
    vertices_and_rays,
)
from toriclg.sigma import SectionSpec, SplitBundleData, ToricVarietyData, build_lg, product, projective_line
from toriclg.structure import double_dual_diff

COUNT = 100


def _random_polytope_points(rng, n):
    pts = {tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(2, 6))}
    for k in range(n):
        for s in (1, -1):
            e = [0] * n
            e[k] = s * rng.randint(1, 2)
            pts.add(tuple(e))
    return sorted(pts)


def prop_polar_involution(count=COUNT, seed=1):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.choice((2, 2, 3))
        S = PointSet(tuple(_random_polytope_points(rng, n)), (), n)
        H = polar(S)
        back = polar(H)
        assert set(back.points) == set(hull(S.points).points), S
        assert canonical_form(polar(back)) == canonical_form(H), S
    return count


def prop_translation(count=COUNT, seed=2):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.choice((2, 3))
        P = polar(PointSet(tuple(_random_polytope_points(rng, n)), (), n))
        xi0 = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n))
        V = vertices_and_rays(P).points
        W = vertices_and_rays(translate(P, xi0)).points
        assert set(W) == {tuple(a + b for a, b in zip(v, xi0)) for v in V}
        assert set(W) == oracles.vertices(*_h(translate(P, xi0)))
    return count


def _h(P):
    return [tuple(r) for r in P.normals], list(P.offsets)


def prop_snf(count=COUNT, seed=3):
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        C = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        snf = xl.smith_normal_form(C, n)
        U, V, D = sympy.Matrix(snf.U), sympy.Matrix(snf.V), sympy.Matrix(snf.D)
        assert U * sympy.Matrix(C) * V == D
        assert abs(U.det()) == 1 and abs(V.det()) == 1
        assert all(D[i, j] == 0 for i in range(m) for j in range(n) if i != j)
        f = list(snf.invariant_factors)
        assert f == [D[i, i] for i in range(min(m, n))]
        assert all(x >= 0 for x in f)
        for a, b in zip(f, f[1:]):
            assert (b == 0) if a == 0 else (b % a == 0)
    return count


def _random_bounded(rng, n, R):
    normals, offsets = [], []
    for k in range(n):
        for s in (1, -1):
            normals.append(tuple(s * (i == k) for i in range(n)))
            offsets.append(Fraction(rng.randint(1, R)))
    for _ in range(rng.randint(1, 4)):
        nu = tuple(rng.randint(-3, 3) for _ in range(n))
        if any(nu):
            normals.append(nu)
            offsets.append(Fraction(rng.randint(-2, 8), rng.randint(1, 3)))
    return normals, offsets


def prop_lattice_points(count=COUNT, seed=4):
    rng = random.Random(seed)
    done = 0
    while done < count:
        n = rng.choice((1, 2, 3))
        normals, offsets = _random_bounded(rng, n, 4)
        P = Polyhedron(tuple(normals), tuple(offsets), n)
        if not oracles.vertices(normals, offsets):
            continue
        assert lattice_points(P) == oracles.box_lattice_points(normals, offsets, 4)
        done += 1
    return done


def prop_facets(count=COUNT, seed=5):
    rng = random.Random(seed)
    done = 0
    while done < count:
        n = rng.choice((2, 2, 3))
        normals, offsets = [], []
        seen = set()
        for _ in range(rng.randint(n + 1, 8)):
            nu = tuple(rng.randint(-3, 3) for _ in range(n))
            if not any(nu):
                continue
            nu = xl.primitive_part(nu)
            if nu in seen:
                continue
            seen.add(nu)
            normals.append(nu)
            offsets.append(Fraction(rng.randint(1, 6), rng.randint(1, 2)))  # origin interior
        if len(normals) < 2:
            continue
        P = Polyhedron(tuple(normals), tuple(offsets), n)
        # every normal is distinct, so the oracle needs no duplicate handling
        assert facet_rows(P).facets == tuple(oracles.facet_hyperplanes(normals, offsets))
        done += 1
    return done


def _p2():
    return ToricVarietyData(((1, 0), (0, 1), (-1, -1)), ("x", "y", "z"))


def _f1():
    return ToricVarietyData(((1, 0), (0, 1), (-1, 1), (0, -1)), ("a", "b", "c", "d"))


def _bases():
    return [projective_line(), product(projective_line(), projective_line()), _p2(), _f1()]


def random_sigma_model(rng):
    Y = rng.choice(_bases())
    c = rng.choice((1, 1, 2)) if Y.dim == 1 else 1
    divisors = [tuple(rng.randint(0, 2) for _ in range(Y.r)) for _ in range(c)]
    if any(not any(D) for D in divisors):
        divisors = [tuple(max(1, x) for x in D) for D in divisors]
    B = SplitBundleData(Y, divisors)
    K = tuple(rng.randint(-1, 1) for _ in range(Y.r))
    if rng.random() < 0.5:
        S = SectionSpec.generic_section()
    else:
        from toriclg.sigma import divisor_points
        terms = [(j, nu, (0, rng.randint(-1, 2))) for j in range(c) for nu in divisor_points(B, j)]
        S = SectionSpec.explicit(terms)
    return build_lg(B, K, S)


def prop_pairing_nonnegative(count=COUNT, seed=6):
    rng = random.Random(seed)
    for _ in range(count):
        M = random_sigma_model(rng)
        prod = sympy.Matrix(M.A.matrix) * sympy.Matrix(M.B.matrix).T
        assert all(x >= 0 for x in prod), (M.A.matrix, M.B.matrix)
    return count


def prop_double_dual(count=COUNT, seed=7):
    rng = random.Random(seed)
    done = tries = 0
    while done < count:
        tries += 1
        assert tries < 20 * count, "too few dualizable instances"
        M = random_sigma_model(rng)
        # both sides must be kopasetic for the double dual to exist
        if not (kopasetic_check(M.B).verdict and kopasetic_check(M.A).verdict):
            continue
        D2, deleted = double_dual_diff(M)
        facets = oracles.facet_hyperplanes([tuple(r) for r in M.B.matrix], list(M.B.im))
        assert deleted == tuple(i for i in range(M.B.nrows) if i not in facets)
        assert D2.B.matrix == tuple(r for i, r in enumerate(M.B.matrix) if i not in deleted)
        assert D2.A.matrix == M.A.matrix
        done += 1
    return done


ALL = {
    "polar involution": prop_polar_involution,
    "translation lemma": prop_translation,
    "SNF validity": prop_snf,
    "lattice points vs box": prop_lattice_points,
    "facet redundancy vs brute force": prop_facets,
    "double dual deletes k-dropped rows": prop_double_dual,
    "A.B^T >= 0 for sigma models": prop_pairing_nonnegative,
}


_results = {}


def run(name):
    """Run one suite once per process; later calls reuse the outcome (or re-raise its failure)."""
    if name not in _results:
        try:
            _results[name] = (ALL[name](), None)
        except AssertionError as e:
            _results[name] = (0, e)
    n, err = _results[name]
    if err is not None:
        raise err
    return n
