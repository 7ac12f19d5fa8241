from fractions import Fraction

import pytest

from conftest import elliptic_model, three_points_model
from toriclg.errors import ConsistencyError
from toriclg.lineardata import LinearData, ToricLGModel, dualize, kopasetic_check
from toriclg.sigma import SplitBundleData, build_lg, projective_line
from toriclg.structure import (
    FACET,
    SCALED,
    analyze,
    build_yprime,
    compute_Vj,
    double_dual_diff,
    dual_with_alpha,
    extract_blocks,
    is_bundle,
    section_search,
    section_test,
    suggest_kopasetic_lift,
)

ONES = (1,) * 8


def test_extract_blocks():
    b = extract_blocks(dualize(three_points_model()))
    assert b.d_prime == ((1,), (-1,), (-2,)) and b.D_prime == ((1,), (1,), (1,))
    e = extract_blocks(dualize(elliptic_model()))
    assert e.d_prime == tuple(r[:2] for r in elliptic_model().B.matrix[:8])
    assert e.D_prime == ((1,),) * 8 and e.zero_rows == (8,)
    z = extract_blocks(dualize(build_lg(SplitBundleData(projective_line(), [(0, 0)]), (0, 0))))
    assert z.d_prime == () and z.D_prime == ()


def test_suggest_lift():
    e = extract_blocks(dualize(elliptic_model()))
    assert kopasetic_check(LinearData.from_im(e.d_prime, ONES)).verdict
    assert kopasetic_check(LinearData.from_im(((1,), (-1,)), (1, 1))).verdict
    d3 = ((1,), (-1,), (-2,))
    # the all-ones lift keeps -2 as a facet normal, which is not primitive
    assert not kopasetic_check(LinearData.from_im(d3, (1, 1, 1))).verdict
    s = suggest_kopasetic_lift(d3, 1)
    assert kopasetic_check(LinearData.from_im(d3, s)).verdict


def test_build_yprime():
    e = extract_blocks(dual_with_alpha(elliptic_model(), ONES))
    Y = build_yprime(e, ONES)
    assert Y.div == ((1, 1), (1, -1), (-1, -1), (-1, 1))
    assert build_yprime(e, (2, 3, 2, 3, 2, 3, 2, 3)).facet_rows == tuple(range(8))
    t = extract_blocks(dual_with_alpha(three_points_model(), (0, 2, 5)))
    Y = build_yprime(t, (0, 2, 5))
    assert Y.div == ((1,), (-1,)) and Y.Dprime_classes == ((1, 1),)


def test_compute_vj():
    e = extract_blocks(dual_with_alpha(elliptic_model(), ONES))
    (V,) = compute_Vj(e, ONES)
    assert V.path == SCALED
    assert {nu for _, nu, _ in V.vx} == {(1, 1), (1, -1), (-1, -1), (-1, 1)}
    t = extract_blocks(dual_with_alpha(three_points_model(), (0, 2, 5)))
    (V,) = compute_Vj(t, (0, 2, 5))
    assert V.path == FACET
    with pytest.raises(ValueError):
        compute_Vj(t, (-1, 2, 5))


def test_is_bundle():
    e = extract_blocks(dual_with_alpha(elliptic_model(), ONES))
    assert is_bundle(e, ONES).is_bundle is True
    t = extract_blocks(dual_with_alpha(three_points_model(), (0, 2, 5)))
    assert is_bundle(t, (0, 2, 5)).is_bundle is False
    single = build_lg(SplitBundleData(projective_line(), [(1, 0)]), (0, 0))
    b = extract_blocks(dualize(single))
    assert len(b.d_prime) == 1
    assert is_bundle(b, (1,)).is_bundle is True


def test_section_test():
    r = section_test(elliptic_model())
    assert r.ok and r.witness == ((0, 0),)
    assert not section_test(three_points_model()).ok
    assert section_search(((1,), (-1,)), [(1, 1)], 1).ok
    assert section_search(((1,), (-1,)), [(2, 1)], 1).class_matches is False


def test_analyze_reports():
    a = analyze(elliptic_model(), ONES)
    assert a.report.section_ok and a.report.section_rows_ok
    j = a.to_json()
    assert j["bundle"]["is_bundle"] is True


def test_double_dual():
    M = elliptic_model()
    bb = ToricLGModel(M.A, M.B.with_lift(tuple((0, 1) for _ in range(8)) + ((0, 0),)), M.blocks)
    D2, deleted = double_dual_diff(bb)
    assert deleted == (0, 2, 4, 6)
    va = ToricLGModel(M.A, M.B.with_lift(tuple((0, a) for a in (2, 3, 2, 3, 2, 3, 2, 3, 0))), M.blocks)
    D2, deleted = double_dual_diff(va)
    assert deleted == () and D2.B.matrix == M.B.matrix
    T = three_points_model()
    p1 = ToricLGModel(T.A, T.B.with_lift(((0, 0), (0, 3), (0, 5), (0, 0))), T.blocks)
    assert double_dual_diff(p1)[1] == (1,)
