"""Walkthrough: pointwise contact structures and their closed-form curvature.

Builds the canonical structure and a random one, validates every axiom, and
probes the two signature curvature identities: the phi-sectional value equals
the constant c whenever h' vanishes, and the c = 1, kappa = 1 reduction has
constant sectional curvature one.
"""

import numpy as np

from ckv import curvature_lc, random_point, standard_point, validate_structure

print("=== canonical structure (m = 2, ambient dimension 5) ===")
model = standard_point(2)
report = validate_structure(model)
for check in report.checks:
    print(f"  {check.name:<24} residual {check.max_residual:.2e}  "
          f"{'ok' if check.passed else 'FAIL'}")
print(f"  all axioms: {'ok' if report.passed else 'FAIL'}")

print("\n=== random structure with h' != 0 ===")
model = random_point(m=3, kappa=-0.8, mu_contact=1.7, c=2.5, seed=12, hprime_scale=1.2)
report = validate_structure(model)
print(f"  kappa={model.kappa}, mu={model.mu_contact}, c={model.c}, dim={model.dim}")
print(f"  max residual over all axioms: {max(c.max_residual for c in report.checks):.2e}")

print("\n=== phi-sectional curvature equals c when h' = 0 ===")
rng = np.random.default_rng(0)
for c in (-2.0, 1.0, 4.5):
    m = random_point(2, kappa=0.3, mu_contact=-1.0, c=c, seed=7, hprime_scale=0.0)
    v = rng.standard_normal(5)
    v -= (v @ m.xi) * m.xi
    v /= np.linalg.norm(v)
    value = curvature_lc(m, v, m.phi @ v, m.phi @ v, v)
    print(f"  c = {c:+.1f}: curvature on (X, phi X) plane = {value:+.12f}")

print("\n=== the c = 1, kappa = 1, h' = 0 reduction is a unit sphere pointwise ===")
m = standard_point(2)
for _ in range(3):
    q, _ = np.linalg.qr(rng.standard_normal((5, 2)))
    v1, v2 = q[:, 0], q[:, 1]
    print(f"  K(random plane) = {curvature_lc(m, v1, v2, v2, v1):.12f}")
