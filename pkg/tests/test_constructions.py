import pytest

from conftest import elliptic_model, p1xp1
from toriclg.constructions import (
    BHData,
    BHError,
    NefData,
    NefError,
    bb_dual,
    bb_mirror_via_duality,
    bh_dual,
    degree_monomials,
    factor_augmented,
    givental_presentation,
    hv_presentation,
    nef_subpartition_check,
    partition_sets,
    phi_check,
    semigroup_generation_check,
)
from toriclg.constructions.berglund_hubsch import KernelRankError, weights_of
from toriclg.polyhedra import canonical_form, polar, vertices_and_rays
from toriclg.sigma import SectionSpec, SplitBundleData, ToricVarietyData, build_lg, projective_line

ONE = ((1, 1, 1, 1),)
SPLIT = ((1, 0, 1, 0), (0, 1, 0, 1))


def test_nef_checks():
    Y = p1xp1()
    v = nef_subpartition_check(NefData(Y, ONE))
    assert v.valid and v.calabi_yau
    assert nef_subpartition_check(NefData(Y, SPLIT)).calabi_yau
    assert not nef_subpartition_check(NefData(Y, ((0, 0, 0, 0),))).valid
    non_cy = nef_subpartition_check(NefData(Y, ((1, 1, 1, 0),)))
    assert non_cy.valid and not non_cy.calabi_yau


def test_phi():
    Y = p1xp1()
    phi = phi_check(NefData(Y, ONE))
    assert phi.ok and all(x == 1 for x in phi.table[0])
    assert phi_check(NefData(Y, SPLIT)).ok
    # on F1 the negative curve alone is not nef, so its support function misses it
    F1 = ToricVarietyData(((1, 0), (0, 1), (-1, 1), (0, -1)), tuple("abcd"))
    bad = NefData(F1, ((0, 1, 0, 0), (1, 0, 1, 1)))
    assert not phi_check(bad).ok
    assert not nef_subpartition_check(bad).valid


def test_bb_dual_elliptic():
    N = NefData(p1xp1(), ONE)
    D = bb_dual(N)
    assert set(vertices_and_rays(D.Pstar).points) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert set(D.Pstar_polar.points) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert partition_sets(bb_dual(D.dual).dual) == partition_sets(N)


def test_bb_self_dual_instance():
    # the diamond polytope as anticanonical polytope: its variety has square rays
    Y = ToricVarietyData(((1, 1), (1, -1), (-1, -1), (-1, 1)), tuple("abcd"), allow_torsion=True)
    D = bb_dual(NefData(Y, ONE))
    assert set(vertices_and_rays(D.Pstar).points) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


def test_bb_split_involution():
    N = NefData(p1xp1(), SPLIT)
    D = bb_dual(N)
    assert len(D.nabla) == 2
    assert set(partition_sets(bb_dual(D.dual).dual)) == set(partition_sets(N))


def test_bb_pipeline():
    R = bb_mirror_via_duality(NefData(p1xp1(), ONE))
    assert R.ok and R.yprime_is_Pstar and R.divisors_match and R.is_bundle and R.section_ok
    assert bb_mirror_via_duality(NefData(p1xp1(), SPLIT)).ok
    with pytest.raises(NefError):
        bb_mirror_via_duality(NefData(p1xp1(), ((1, 1, 1, 0),)))


def test_bh():
    fermat = BHData((1, 1, 1), ((3, 0, 0), (0, 3, 0), (0, 0, 3)))
    R = bh_dual(fermat)
    assert R.mirror == fermat and R.routes_agree
    loop = BHData((1, 1, 1), ((2, 1, 0), (0, 2, 1), (0, 0, 3)))
    R = bh_dual(loop)
    assert R.mirror.weights == (2, 1, 1) and R.mirror.degree == 4
    for col in R.mirror.exponents:
        assert sum(a * b for a, b in zip((2, 1, 1), col)) == 4
    assert factor_augmented(loop).ok
    with pytest.raises(BHError):
        BHData((1, 1, 1), ((1, 1, 1),) * 3)
    with pytest.raises(KernelRankError):
        weights_of(((1, 1, 1),) * 3)
    assert (3, 0, 0) in degree_monomials((1, 1, 1))
    assert BHData.from_json(loop.to_json()) == loop


def test_givental_elliptic():
    G = givental_presentation(elliptic_model())
    assert G.m == ((1, 0, 1, 0), (0, 1, 0, 1)) and G.d == ((2,), (2,))
    G2, cert = hv_presentation(elliptic_model())
    assert cert.ok and cert.m_equal and cert.d_equal


def test_givental_small_cases():
    M = build_lg(SplitBundleData(projective_line(), [(1, 1)]), (0, 0))
    G = givental_presentation(M)
    assert [r.text(G.x_names, G.y_names) for r in G.relations] == ["x1*x2 = Q1*y1^2"]
    assert hv_presentation(M)[1].ok
    line = ToricVarietyData(((1,),), ("0",))
    M0 = build_lg(SplitBundleData(line, [(1,)]), (0,), SectionSpec.explicit([(0, (0,)), (0, (1,))]))
    G0 = givental_presentation(M0)
    assert G0.relations == () or list(G0.relations) == []
    assert G0.F == "x1 + y1"


def test_semigroup():
    assert semigroup_generation_check(elliptic_model(), 4).ok
    v = semigroup_generation_check([(1, 0), (1, 2)], 4)
    assert not v.ok and tuple(v.counterexample) == (1, 1)
    one = semigroup_generation_check([(1,)], 4, smooth=True)
    assert one.ok and not one.warnings
