"""Circle-equivariant linear symplectic maps of C^2 and the blow-up chart.

Run: python demos/local_models_tour.py
"""
import numpy as np

from flagsympl import local_models as lm

rng = np.random.default_rng(3)
e = lm.random_element(rng)
print("element:", e)
print("membership round trip:", lm.sp4_membership(lm.sp4_matrix(e)))

wp, wm = lm.induced_rays(e)
print(f"rays: w+ = {wp:.4f}, w- = {wm:.4f}")
print("recovered modulo the circle:", lm.from_rays(wp, wm))
print("identity pattern (1, -1) is central:", lm.from_rays(1.0, -1.0).is_central())
print("winding of arg w+ over the theta4 circle:", lm.winding_number())
try:
    lm.solve_for_rays(0.1, 0.1)
except ValueError as exc:
    print("equal arguments:", exc)

rep = lm.blowup_checks(1.0, 0.5, 1, 2000, rng)
for key in ("symplectic", "moment_agreement", "min_gradient", "gradient_bound", "weights"):
    print(f"blow-up {key}: {rep[key]}")
