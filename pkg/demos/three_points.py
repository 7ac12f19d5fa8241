"""Three points on P1: four possible duals depending on Im(L)."""

from toriclg.lineardata import polytope_of
from toriclg.polyhedra import canonical_form, vertices_and_rays
from toriclg.sigma import SplitBundleData, build_lg, projective_line
from toriclg.structure import analyze, dual_with_alpha

M = build_lg(SplitBundleData(projective_line(), [(2, 1)]), (0, 0))
print("div_X:", M.A.matrix)
print("mon_W:", M.B.matrix)

for im in ((0, 2, 5, 0), (0, 3, 5, 0), (-1, -1, 0, 0), (-1, 0, -1, 0)):
    D = dual_with_alpha(M, im)
    P = polytope_of(D.A)
    V = vertices_and_rays(P)
    print()
    print("Im(L) =", im)
    print("  facets:", [(n, str(a)) for n, a in canonical_form(P)])
    print("  vertices:", [tuple(str(x) for x in v) for v in V.points], "rays:", list(V.rays))

A = analyze(M, (0, 2, 5))
print()
print("first regime: div_Y' =", A.report.yprime.div, " k(D'_1) =", A.report.yprime.Dprime_classes[0])
print("bundle:", A.report.is_bundle, " section:", A.report.section_ok)
print("terms of V^x that fail the vertex criterion:", A.report.failing_elements)
