"""The generators acting on the SU(3) reduced space over N diag(1, 0, -1).

Run: python demos/reduced_triangle.py
"""
from flagsympl import reduced3
from flagsympl.dehn import TwistProfile

N = 4.0
profile = TwistProfile(1.0)

for alpha in (1, 2):
    perm = reduced3.vertex_permutation(alpha, N, profile)
    print(f"tau_{alpha} permutes the vertices as {reduced3.cycle_notation(perm)}")

rep = reduced3.figure1_report(N, 256, profile, alpha=1)
ok, gap = reduced3.figure1_pass(rep)
print("edge Q2Q3 reversed:", rep["reversed_23"])
print("image of Q1Q2 stays on Q1Q2 for a in", rep["on_edge_12_interval"])
print("saturated parameters:", rep["saturated_interval"], f"(gap {gap:.4f})")
print("pattern holds:", ok)

tr = reduced3.trace_edge_image(1, "12", 16, N, profile)
print("\n   a      m12      m13      m23       nu")
for row in tr["polyline"]:
    print("  ".join(f"{v:7.3f}" for v in row))

# braid relation on vertex labels
p1 = reduced3.vertex_permutation(1, N, profile)
p2 = reduced3.vertex_permutation(2, N, profile)


def _apply(ps):
    out = (1, 2, 3)
    for p in ps:
        out = tuple(p[k - 1] for k in out)
    return out


print("\nbraid relation on vertices:", _apply((p1, p2, p1)) == _apply((p2, p1, p2)))
