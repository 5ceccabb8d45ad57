"""Walkthrough: verifying the whole inequality catalog.

Evaluates both sides of every implemented bound on three kinds of input: the
first-connection equality witnesses (slack exactly zero), a generic random
first-connection instance, and a generic second-connection instance.  Also
shows the expansion cross-check, which recomputes every intermediate identity
two independent ways.
"""

import numpy as np

from ckv import (
    Plane,
    applicable_theorems,
    attach,
    cross_check,
    equality_instance,
    first_connection,
    random_point,
    second_connection,
    verify,
)


def show(sub, title):
    print(f"\n=== {title} ===")
    plane = Plane(sub.tangent[0], sub.tangent[1])
    X = sub.tangent[0]
    print(f"  {'id':<6}{'lhs':>14}{'rhs':>14}{'slack':>12}  holds")
    for tid in applicable_theorems(sub.spec.kind):
        v = verify(sub, tid, plane=plane, X=X)
        print(f"  {tid:<6}{v.lhs:>14.6f}{v.rhs:>14.6f}{v.slack:>12.3e}  {v.holds}")
    cc = cross_check(sub)
    print(f"  cross-check: max residual {cc.max_residual:.2e}, "
          f"Q_min {cc.q_min:+.3e}")


show(equality_instance("cor32", 3, {"h11": 1.0, "h22": 1.0}),
     "equality witness: diag(1,1,2) shape (slack 0 in 3.1 and 3.5i)")

show(equality_instance("thm35_ii", 3, {"a": 1.0}),
     "equality witness: diag(2a,2a,a) shape (slack 0 in 3.5ii)")

rng = np.random.default_rng(5)
model = random_point(2, kappa=1.4, mu_contact=-2.1, c=0.7, seed=21, hprime_scale=0.8)
P, D = rng.standard_normal(5), rng.standard_normal((5, 5))
hhat = rng.standard_normal((2, 3, 3))
hhat = (hhat + np.transpose(hhat, (0, 2, 1))) / 2.0

show(attach(model, first_connection(1.7, -0.6, P, D), rng.standard_normal((3, 5)), hhat),
     "random instance, first connection")

show(attach(model, second_connection(-2.2, 1.1, P, D), rng.standard_normal((3, 5)), hhat),
     "random instance, second connection")
