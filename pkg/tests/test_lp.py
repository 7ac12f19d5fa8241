import itertools
import random
from fractions import Fraction

import oracles
from toriclg.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, linprog


def test_small_optimum():
    # max x + y on x <= 2, y <= 3, x + 2y <= 6
    res = linprog([1, 1], [[1, 0], [0, 1], [1, 2]], [2, 3, 6])
    assert res.status == OPTIMAL and res.value == 4 and res.x == (2, 2)


def test_infeasible_and_unbounded():
    assert linprog([1], [[1], [-1]], [-1, -1]).status == INFEASIBLE
    assert linprog([1], [[-1]], [0]).status == UNBOUNDED
    assert feasible_point([[1], [-1]], [-1, -1], nvars=1) is None


def test_equalities_and_nonneg():
    res = linprog([-1, -1], A_eq=[[1, 1]], b_eq=[3], nonneg=True)
    assert res.status == OPTIMAL and res.value == -3
    x = feasible_point(A_eq=[[1, 2]], b_eq=[Fraction(1, 3)], nvars=2)
    assert x[0] + 2 * x[1] == Fraction(1, 3)


def test_random_2d_against_vertex_oracle():
    rng = random.Random(11)
    for _ in range(60):
        A = [[-1, 0], [0, -1], [1, 0], [0, 1]]
        b = [Fraction(rng.randint(0, 3)) for _ in range(2)] + [Fraction(rng.randint(0, 4)) for _ in range(2)]
        for _ in range(rng.randint(0, 3)):
            A.append([rng.randint(-3, 3), rng.randint(-3, 3)])
            b.append(Fraction(rng.randint(-2, 6), rng.randint(1, 2)))
        c = [rng.randint(-3, 3), rng.randint(-3, 3)]
        # A x <= b  <=>  -A x + b >= 0
        V = oracles.vertices([tuple(-a for a in row) for row in A], b)
        res = linprog(c, A, b)
        if not V:
            assert res.status == INFEASIBLE
        else:
            assert res.status == OPTIMAL
            assert res.value == max(c[0] * v[0] + c[1] * v[1] for v in V)
