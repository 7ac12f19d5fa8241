import pytest

from conftest import elliptic_model, p1xp1, three_points_model
from toriclg import exactlinalg as xl
from toriclg.lineardata import LinearData, ToricLGModel
from toriclg.sigma import (
    CANONICAL,
    LEX,
    SectionSpec,
    SigmaError,
    SplitBundleData,
    ToricVarietyData,
    build_lg,
    chow_isomorphism,
    div_total_space,
    divisor_points,
    dual_exists,
    mon_for_section,
    order_points,
    projective_line,
)
from toriclg.structure import dual_with_alpha

DIAMOND_RAYS = ((1, 1), (1, -1), (-1, -1), (-1, 1))


def test_div_total_space():
    assert div_total_space(SplitBundleData(p1xp1(), [(1, 1, 1, 1)])) == (
        (1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, 1))
    assert div_total_space(SplitBundleData(p1xp1(), [])) == p1xp1().div
    assert three_points_model().A.matrix == ((1, 2), (-1, 1), (0, 1))


def test_mon_for_section():
    M = elliptic_model()
    assert M.B.matrix[-1] == (0, 0, 1) and len(M.B.matrix) == 9
    B = SplitBundleData(projective_line(), [(0, 0)])
    rows, terms, _ = mon_for_section(B, SectionSpec.generic_section())
    assert rows == ((0, 1),)
    S = SectionSpec.explicit([(0, (1, 0), (0, 2)), (0, (0, 0))])
    rows, terms, lifts = mon_for_section(SplitBundleData(p1xp1(), [(1, 1, 1, 1)]), S)
    assert rows == ((1, 0, 1), (0, 0, 1)) and lifts[0].im == 2


def test_order_points():
    pts = [(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1), (2, 0)]
    assert order_points(pts, CANONICAL) == [(0, 1), (1, 0), (2, 0), (0, -1), (-1, 0), (0, 0)]
    assert order_points([(0,), (-1,), (1,), (-2,)]) == [(1,), (-1,), (-2,), (0,)]
    assert order_points(pts, LEX)[0] == (-1, 0)


def test_build_rejections():
    with pytest.raises(SigmaError):
        build_lg(SplitBundleData(p1xp1(), []), (0, 0, 0, 0))
    with pytest.raises(xl.TorsionError):
        ToricVarietyData(DIAMOND_RAYS, ("a", "b", "c", "d"))
    tor = ToricVarietyData(DIAMOND_RAYS, ("a", "b", "c", "d"), allow_torsion=True)
    with pytest.raises(xl.TorsionError):
        build_lg(SplitBundleData(tor, [(1, 1, 1, 1)]), (0, 0, 0, 0))


def test_dual_exists():
    M = elliptic_model()
    assert dual_exists(M)
    for alpha in ((1,) * 8, (2, 3, 2, 3, 2, 3, 2, 3)):
        assert dual_exists(build_lg(M.blocks.bundle, (0,) * 4, SectionSpec.explicit(
            [(0, nu, (0, a)) for nu, a in zip(divisor_points(M.blocks.bundle, 0), alpha + (0,))])))
    T = three_points_model()
    for im in ((0, 2, 5, 0), (0, 3, 5, 0), (-1, -1, 0, 0), (-1, 0, -1, 0)):
        lift = xl.imaginary_lift(im)
        assert dual_exists(ToricLGModel(T.A, T.B.with_lift(lift), T.blocks))
    plain = ToricLGModel(LinearData.from_im(((1,),), (0,)), LinearData.from_im(((1,),), (0,)))
    assert dual_exists(plain) is None


def test_chow_isomorphism():
    W = chow_isomorphism(SplitBundleData(p1xp1(), [(1, 1, 1, 1)]))
    assert W.ok and W.map == ((1, 0, 1, 0, -2), (0, 1, 0, 1, -2))


def test_variety_json():
    Y = p1xp1()
    assert ToricVarietyData.from_json(Y.to_json()).div == Y.div
