import numpy as np
import pytest

from ckv.connections import first_connection, second_connection
from ckv.contact import random_point, standard_point
from ckv.errors import DimensionMismatch, NonSymmetricH, RankDeficient
from ckv.frames import Plane
from ckv.submanifold import (
    attach,
    casorati,
    casorati_of_subspace,
    induced_curvature,
    induced_curvature_direct,
    ricci,
    ricci_form,
    scalar_tau,
    scalar_tau_pair,
    sectional,
    theta_k,
)

E5 = np.eye(5)


def _zero_spec(d=5):
    return first_connection(0.0, 0.0, np.zeros(d), np.zeros((d, d)))


def _plain_sub(hhat0=None):
    """n = 3 in the standard 5-dim reduction (c = 1, kappa = 1, h' = 0)."""
    hhat = np.zeros((2, 3, 3))
    if hhat0 is not None:
        hhat[0] = hhat0
    return attach(standard_point(2), _zero_spec(), E5[:3], hhat)


def _random_sub(seed, kind, n=3, m=2):
    rng = np.random.default_rng(seed)
    d = 2 * m + 1
    model = random_point(
        m, float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)),
        float(rng.uniform(-3, 3)), seed=seed, hprime_scale=float(rng.uniform(0, 1)),
    )
    P = rng.standard_normal(d)
    D = rng.standard_normal((d, d))
    if kind == 1:
        spec = first_connection(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)), P, D)
    else:
        spec = second_connection(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)), P, D)
    p = d - n
    hhat = rng.standard_normal((p, n, n))
    hhat = (hhat + np.transpose(hhat, (0, 2, 1))) / 2.0
    return attach(model, spec, rng.standard_normal((n, d)), hhat)


# --- attach -----------------------------------------------------------------

def test_attach_induced_form_kind1():
    # tangent e1..e3, hhat = 0, P = e4, lambda2 = 1: h^(e4) = -I, H = -e4
    spec = first_connection(0.0, 1.0, E5[3], np.zeros((5, 5)))
    sub = attach(standard_point(2), spec, E5[:3], np.zeros((2, 3, 3)))
    assert np.allclose(sub.normal, E5[3:])
    assert np.allclose(sub.h[0], -np.eye(3))
    assert np.abs(sub.h[1]).max() == 0.0
    assert np.allclose(sub.mean_curvature, -E5[3])


def test_attach_lambda2_zero_keeps_hhat():
    spec = first_connection(0.0, 0.0, E5[3], np.zeros((5, 5)))
    sub = attach(standard_point(2), spec, E5[:3], np.zeros((2, 3, 3)))
    assert np.abs(sub.h).max() == 0.0
    assert np.allclose(sub.mean_curvature, 0.0)


def test_attach_xi_tangent_decomposition():
    sub = attach(standard_point(2), _zero_spec(), E5[[0, 1, 4]], np.zeros((2, 3, 3)))
    assert np.allclose(sub.xi_top, E5[4])
    assert abs(float(sub.eta_t @ sub.eta_t) - 1.0) < 1e-13
    assert np.abs(sub.xi_perp).max() < 1e-13


def test_attach_errors():
    with pytest.raises(RankDeficient):
        attach(standard_point(2), _zero_spec(), [E5[0], E5[1], E5[0] + 1e-13 * E5[1]],
               np.zeros((2, 3, 3)))
    bad = np.zeros((2, 3, 3))
    bad[0, 0, 1] = 1e-6
    with pytest.raises(NonSymmetricH):
        attach(standard_point(2), _zero_spec(), E5[:3], bad)
    with pytest.raises(DimensionMismatch):
        attach(standard_point(2), _zero_spec(), E5[:3], np.zeros((3, 3, 3)))


def test_attach_second_kind_h_equals_hhat():
    rng = np.random.default_rng(31)
    hhat = rng.standard_normal((2, 3, 3))
    hhat = (hhat + np.transpose(hhat, (0, 2, 1))) / 2.0
    spec = second_connection(1.0, -2.0, rng.standard_normal(5), rng.standard_normal((5, 5)))
    sub = attach(standard_point(2), spec, E5[:3], hhat)
    assert np.array_equal(sub.h, sub.hhat)


# --- curvature --------------------------------------------------------------

def test_totally_geodesic_constant_curvature():
    sub = _plain_sub()
    for i in range(3):
        for j in range(3):
            if i != j:
                val = induced_curvature(sub, E5[i], E5[j], E5[j], E5[i])
                assert abs(val - 1.0) < 1e-13


def test_gauss_contribution():
    sub = _plain_sub(np.diag([1.0, 1.0, 2.0]))
    assert abs(induced_curvature(sub, E5[0], E5[1], E5[1], E5[0]) - 2.0) < 1e-13


def test_degenerate_arguments():
    sub = _random_sub(32, 1)
    X = sub.tangent[0]
    Z = sub.tangent[1]
    assert abs(induced_curvature(sub, X, X, Z, Z)) < 1e-12


def test_rejects_non_tangent_vectors():
    sub = _plain_sub()
    with pytest.raises(DimensionMismatch):
        induced_curvature(sub, E5[0], E5[1], E5[1], E5[4])


@pytest.mark.parametrize("kind", [1, 2])
def test_tensor_matches_direct_evaluation(kind):
    rng = np.random.default_rng(33 + kind)
    for seed in range(8):
        sub = _random_sub(100 + seed, kind, n=int(rng.choice([3, 4])), m=int(rng.choice([2, 3])))
        for _ in range(6):
            args = [rng.standard_normal(sub.n) @ sub.tangent for _ in range(4)]
            a = induced_curvature(sub, *args)
            b = induced_curvature_direct(sub, *args)
            assert abs(a - b) < 1e-9 * (1 + abs(a))


# --- sectional / tau / ricci ------------------------------------------------

def test_sectional_values():
    sub = _plain_sub(np.diag([1.0, 1.0, 2.0]))
    assert abs(sectional(sub, Plane(E5[0], E5[1])) - 2.0) < 1e-13
    assert abs(sectional(sub, Plane(E5[0], E5[2])) - 3.0) < 1e-13
    plane = Plane(E5[0], E5[1]).rotated(0.7)
    assert abs(sectional(sub, plane) - 2.0) < 1e-12


def test_sectional_basis_invariance_random():
    sub = _random_sub(34, 1)
    plane = Plane(sub.tangent[0], sub.tangent[1])
    base = sectional(sub, plane)
    rng = np.random.default_rng(35)
    for _ in range(50):
        rotated = plane.rotated(rng.uniform(0, 2 * np.pi))
        assert abs(sectional(sub, rotated) - base) < 1e-10 * (1 + abs(base))
    assert abs(sectional(sub, plane.reflected()) - base) < 1e-10 * (1 + abs(base))


def test_tau_examples():
    assert abs(scalar_tau(_plain_sub()) - 3.0) < 1e-13
    assert abs(scalar_tau(_plain_sub(np.diag([1.0, 1.0, 2.0]))) - 8.0) < 1e-13
    sub4 = attach(standard_point(2), _zero_spec(), np.eye(5)[:4], np.zeros((1, 4, 4)))
    assert abs(scalar_tau(sub4) - 6.0) < 1e-13


@pytest.mark.parametrize("kind", [1, 2])
def test_tau_double_formula_agreement(kind):
    for seed in range(10):
        sub = _random_sub(200 + seed, kind)
        a, b = scalar_tau_pair(sub)
        assert abs(a - b) < 1e-12 * (1 + abs(a))


def test_ricci_examples():
    sub = _plain_sub()
    for i in range(3):
        assert abs(ricci(sub, E5[i]) - 2.0) < 1e-13
    sub = _plain_sub(np.diag([1.0, 1.0, 2.0]))
    assert abs(ricci(sub, E5[0], symmetrized=True) - 5.0) < 1e-13
    assert abs(ricci(sub, E5[2]) - 6.0) < 1e-13


def test_ricci_completion_independence():
    sub = _random_sub(36, 2)
    rng = np.random.default_rng(37)
    x = rng.standard_normal(sub.n)
    x /= np.linalg.norm(x)
    X = x @ sub.tangent
    default = ricci(sub, X)
    default_sym = ricci(sub, X, symmetrized=True)
    for trial in range(3):
        q, _ = np.linalg.qr(np.column_stack([x, rng.standard_normal((sub.n, sub.n - 1))]))
        completion = [q[:, j] @ sub.tangent for j in range(1, sub.n)]
        assert abs(ricci(sub, X, completion=completion) - default) < 1e-10 * (1 + abs(default))
        assert abs(ricci(sub, X, symmetrized=True, completion=completion) - default_sym) \
            < 1e-10 * (1 + abs(default_sym))


def test_ricci_form_trace_is_twice_tau():
    sub = _random_sub(38, 1)
    assert abs(np.trace(ricci_form(sub)) - 2.0 * scalar_tau(sub)) < 1e-11


def test_ricci_rejects_non_unit():
    sub = _plain_sub()
    with pytest.raises(ValueError):
        ricci(sub, 2.0 * E5[0])


# --- theta ------------------------------------------------------------------

def test_theta_constant_curvature():
    sub = _plain_sub()
    for k in (2, 3):
        est = theta_k(sub, k)
        assert abs(est.value - 1.0) < 1e-9, (k, est)


def test_theta_grid_matches_random_probe():
    sub = _plain_sub(np.diag([1.0, 1.0, 2.0]))
    est = theta_k(sub, 2)
    assert est.mode == "grid"
    assert abs(est.value - 2.0) < 1e-6
    # independent oracle: random planes
    rng = np.random.default_rng(39)
    best = np.inf
    R = sub.riem
    for _ in range(200):
        q, _ = np.linalg.qr(rng.standard_normal((3, 2)))
        v1, v2 = q[:, 0], q[:, 1]
        r1221 = np.einsum("abcd,a,b,c,d->", R, v1, v2, v2, v1)
        r1212 = np.einsum("abcd,a,b,c,d->", R, v1, v2, v1, v2)
        best = min(best, (r1221 - r1212) / 2.0)
    assert est.value <= best + 1e-9


def test_theta_eigen_vs_sampling():
    sub = _random_sub(40, 1)
    est = theta_k(sub, sub.n)
    assert est.mode == "exact_eigen"
    Q = ricci_form(sub)
    rng = np.random.default_rng(41)
    xs = rng.standard_normal((10_000, sub.n))
    xs /= np.linalg.norm(xs, axis=1, keepdims=True)
    sampled = np.einsum("ki,ij,kj->k", xs, Q, xs).min() / (sub.n - 1)
    assert est.value <= sampled + 1e-9
    assert sampled - est.value < 1e-2  # coarse sampling still lands nearby


def test_theta_multistart_upper_bound():
    sub = _random_sub(42, 2, n=4, m=3)
    exact = theta_k(sub, 4)
    est = theta_k(sub, 4, strategy="multistart")
    assert est.mode == "multistart" and est.samples > 0
    assert exact.value <= est.value + 1e-9
    mid = theta_k(sub, 3)
    assert mid.mode == "multistart"


def test_theta_invalid_k():
    sub = _plain_sub()
    with pytest.raises(ValueError):
        theta_k(sub, 1)
    with pytest.raises(ValueError):
        theta_k(sub, 5)


# --- casorati ---------------------------------------------------------------

def test_casorati_zero():
    cas = casorati(_plain_sub())
    assert cas.C == 0.0 and cas.delta_c == 0.0 and cas.delta_c_hat == 0.0


def _latlong_oracle(sub, count=400):
    """Exhaustive lat-long grid over S^2; independent of the production layout."""
    thetas = np.linspace(0, np.pi, count)
    phis = np.linspace(0, 2 * np.pi, 2 * count, endpoint=False)
    T, P = np.meshgrid(thetas, phis, indexing="ij")
    U = np.stack([
        (np.sin(T) * np.cos(P)).ravel(),
        (np.sin(T) * np.sin(P)).ravel(),
        np.cos(T).ravel(),
    ], axis=1)
    h = sub.h
    vals = np.full(U.shape[0], np.sum(h * h))
    h2 = np.einsum("rab,rbc->rac", h, h)
    vals = vals - 2.0 * np.einsum("rab,ka,kb->k", h2, U, U) \
        + np.einsum("kr->k", np.einsum("rab,ka,kb->kr", h, U, U) ** 2)
    vals = vals / (sub.n - 1)
    return U, vals


def test_casorati_example_against_grid_oracle():
    sub = _plain_sub(np.diag([1.0, 1.0, 2.0]))
    cas = casorati(sub)
    assert abs(cas.C - 2.0) < 1e-13
    assert abs(cas.inf_CL - 1.0) < 1e-6
    assert abs(cas.sup_CL - 2.5) < 1e-6
    assert abs(cas.delta_c - 5.0 / 3.0) < 1e-6
    assert abs(cas.delta_c_hat - 23.0 / 12.0) < 1e-6
    # oracle: the lat-long sweep confirms the extrema and the minimizer e3
    U, vals = _latlong_oracle(sub)
    assert vals.min() >= cas.inf_CL - 1e-9
    assert vals.max() <= cas.sup_CL + 1e-9
    winner = U[np.argmin(vals)]
    assert abs(abs(winner[2]) - 1.0) < 2e-2  # minimizer is +/- e3
    assert abs(abs(cas.argmin_u[2]) - 1.0) < 1e-6


def test_casorati_of_subspace():
    sub = _plain_sub(np.diag([1.0, 1.0, 2.0]))
    assert abs(casorati_of_subspace(sub, E5[:2]) - 1.0) < 1e-13
    assert abs(casorati_of_subspace(sub, E5[:3]) - 2.0) < 1e-13


@pytest.mark.parametrize("kind", [1, 2])
def test_h_norm_dominates_mean(kind):
    for seed in range(10):
        sub = _random_sub(300 + seed, kind)
        assert sub.h_norm_sq >= sub.n * sub.mean_curvature_sq - 1e-12


def test_second_kind_invariant_in_a():
    rng = np.random.default_rng(43)
    model = random_point(2, 0.9, -1.4, 2.2, seed=7, hprime_scale=0.8)
    P, D = rng.standard_normal(5), rng.standard_normal((5, 5))
    hhat = rng.standard_normal((2, 3, 3))
    hhat = (hhat + np.transpose(hhat, (0, 2, 1))) / 2.0
    basis = rng.standard_normal((3, 5))
    subs = [
        attach(model, second_connection(a, 1.3, P, D), basis, hhat)
        for a in (0.0, 1.0, -3.0)
    ]
    taus = [scalar_tau(s) for s in subs]
    assert max(taus) - min(taus) < 1e-12 * (1 + abs(taus[0]))
    plane = Plane(subs[0].tangent[0], subs[0].tangent[2])
    ks = [sectional(s, plane) for s in subs]
    assert max(ks) - min(ks) < 1e-12 * (1 + abs(ks[0]))
    X = subs[0].tangent[1]
    rics = [ricci(s, X) for s in subs]
    assert max(rics) - min(rics) < 1e-12 * (1 + abs(rics[0]))
    cs = [casorati(s).C for s in subs]
    assert max(cs) - min(cs) < 1e-12 * (1 + abs(cs[0]))
