"""Batyrev-Borisov, Berglund-Huebsch and Givental data for small examples."""

from toriclg.constructions import (
    BHData,
    NefData,
    bb_dual,
    bb_mirror_via_duality,
    bh_dual,
    hv_presentation,
    semigroup_generation_check,
)
from toriclg.polyhedra import vertices_and_rays
from toriclg.sigma import SplitBundleData, build_lg, product, projective_line, reorder_rays

Y = reorder_rays(product(projective_line(), projective_line()), [0, 2, 1, 3])

for parts in (((1, 1, 1, 1),), ((1, 0, 1, 0), (0, 1, 0, 1))):
    N = NefData(Y, parts)
    D = bb_dual(N)
    R = bb_mirror_via_duality(N)
    print("nef partition", parts)
    print("  P* vertices:", sorted(tuple(int(x) for x in v) for v in vertices_and_rays(D.Pstar).points))
    print("  dual partition:", D.dual.parts, "on rays", D.dual.base.div)
    print("  duality reproduces it:", R.ok)

print()
for cols in (((3, 0, 0), (0, 3, 0), (0, 0, 3)), ((2, 1, 0), (0, 2, 1), (0, 0, 3))):
    B = BHData((1, 1, 1), cols)
    R = bh_dual(B)
    print("BH", cols, "->", R.mirror.weights, "degree", R.mirror.degree)

print()
M = build_lg(SplitBundleData(Y, [(1, 1, 1, 1)]), (0, 0, 0, 0))
G, cert = hv_presentation(M)
for r in G.relations:
    print(r.text(G.x_names, G.y_names))
print("F =", G.F)
for entry in G.to_json()["variable_map"]:
    print(f"  {entry['variable']} = {entry['image']}")
print("Hori-Vafa agrees:", cert.ok)
print("semigroup generated at bound 4:", semigroup_generation_check(M, 4).ok)
