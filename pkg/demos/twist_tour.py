"""Walk through the fiberwise Dehn twist on T*(SU(3)/T).

Run: python demos/twist_tour.py
"""
import numpy as np

from flagsympl import dehn, lie, moment
from flagsympl.phase_space import points_distance, random_point

rng = np.random.default_rng(1)
profile = dehn.TwistProfile(cutoff=1.0)

p = random_point(3, rng)
_, m = lie.root_component(p.xi, 1)
print(f"root component |xi_alpha1| = {m:.3f}, twist angle h = {profile.h(m):.3f}")

q = dehn.tau(p, 1, profile)
print("moment map preserved:", np.abs(moment.mu(q) - moment.mu(p)).max())
print("round trip distance:", points_distance(dehn.tau_inverse(q, 1, profile), p))
print("symplectic pullback error:", dehn.twist_pullback_error(p, 1, profile))
print("Hamiltonian check:", dehn.hamiltonian_field_check(p, 1, profile))

# far from the zero section the twist is the identity
far = random_point(3, rng, scale=20.0)
print("large covector, twist moves by:", points_distance(far, dehn.tau(far, 1, profile)))

# decay of the Steinberg ratio along a sequence leaving every compact set
x = lie.random_su(3, rng)
direction = dehn.without_root(lie.random_herm_zero_diag(3, rng), 1)
direction *= 2 / np.linalg.norm(direction)
offset, _ = lie.root_component(lie.random_herm_zero_diag(3, rng), 1)
offset *= 0.5 / abs(offset[0, 1])
scales, ratios, slope = dehn.steinberg_ladder(x, direction, offset, 1, profile)
for s, r in zip(scales, ratios):
    print(f"  s = {s:6.0f}  ratio = {r:.3e}")
print(f"log-log slope {slope:.3f}")
