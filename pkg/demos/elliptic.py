"""Elliptic curves in P1 x P1: the dual of the anticanonical hypersurface model.

Builds (div_E, mon) from the sigma-model data, then dualizes with two
choices of Im(L) and reports what kind of variety the dual A side is.
"""

from toriclg import exactlinalg as xl
from toriclg.polyhedra import vertices_and_rays
from toriclg.sigma import SplitBundleData, build_lg, product, projective_line, reorder_rays
from toriclg.structure import analyze, rep_polytope


def show(name, M):
    print(f"{name}:")
    for row in M:
        print("   ", row)


Y = reorder_rays(product(projective_line(), projective_line()), [0, 2, 1, 3])
M = build_lg(SplitBundleData(Y, [(1, 1, 1, 1)]), (0, 0, 0, 0))
show("div_E", M.A.matrix)
show("mon", M.B.matrix)
print("cokernel projection:", xl.cokernel(M.A.matrix).projection)

for alpha in ((1,) * 8, (2, 3, 2, 3, 2, 3, 2, 3)):
    A = analyze(M, alpha)
    r = A.report
    P = rep_polytope(A.blocks, alpha)
    print()
    print("alpha' =", alpha)
    print("  facet rows of Y':", r.yprime.facet_rows)
    print("  Y' vertices:", sorted(tuple(int(x) for x in v) for v in vertices_and_rays(P).points))
    print("  dual is a bundle total space:", r.is_bundle)
    print("  W' comes from a section:", r.section_ok)
