"""Submanifold germ: decompositions, induced curvature, and intrinsic scalars.

``attach`` fixes an n-dimensional tangent frame inside the ambient space,
derives the orthonormal normal frame, decomposes xi, P, phi and h' into
tangential/normal parts, forms the induced second fundamental form of the
chosen connection, and precomputes the full induced curvature tensor
R[a,b,c,d] = R(e_a, e_b, e_c, e_d) on the tangent frame.  Every intrinsic
quantity (sectional curvature, scalar curvature, Ricci curvatures, the
k-Ricci invariant, Casorati curvatures) is then a cheap contraction.

The tensor is assembled from outer products of the restricted structure data;
``induced_curvature_direct`` evaluates the same value through the ambient
curvature plus the Gauss-equation corrections on raw vectors and serves as
the independent reference path in the tests.

Since the connections are not metric, R(X,Y,Z,W) != -R(X,Y,W,Z) in general
and the sectional curvature is the symmetrized combination
K = (R(e1,e2,e2,e1) - R(e1,e2,e1,e2)) / 2, which is basis-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .connections import KIND_FIRST, ConnectionSpec, ambient_curvature, correction_tensors
from .contact import ContactPointModel
from .errors import DimensionMismatch, NonSymmetricH
from .frames import Plane, as_vector, complete_frame, orthonormalize
from .spheresearch import extremize_on_sphere, refine_on_sphere, sphere_samples

__all__ = [
    "SubmanifoldPoint",
    "attach",
    "induced_curvature",
    "induced_curvature_direct",
    "sectional",
    "scalar_tau",
    "scalar_tau_pair",
    "ricci",
    "ricci_form",
    "theta_k",
    "ThetaEstimate",
    "casorati",
    "CasoratiCurvatures",
]

_TANGENCY_TOL = 1e-10


@dataclass(frozen=True)
class SubmanifoldPoint:
    """Immutable bundle of a submanifold germ and its derived data.

    tangent/normal are row-stacked orthonormal frames; hhat and h are the
    (p, n, n) component arrays of the Levi-Civita and induced second
    fundamental forms.  The ``*_top`` matrices are tangent-frame restrictions
    (e.g. phat[a,b] = <e_a, phi e_b>).
    """

    model: ContactPointModel
    spec: ConnectionSpec
    n: int
    p: int
    tangent: np.ndarray
    normal: np.ndarray
    hhat: np.ndarray
    h: np.ndarray
    # decomposition fields
    xi_top: np.ndarray
    xi_perp: np.ndarray
    P_top: np.ndarray
    P_perp: np.ndarray
    phat: np.ndarray          # tangential phi, n x n
    fnor: np.ndarray          # normal part of phi on the frame, p x n
    hprime_top: np.ndarray    # tangential h', n x n
    phi_hprime_top: np.ndarray  # tangential phi h', n x n
    # restricted auxiliary data
    eta_t: np.ndarray         # eta on the tangent frame, length n
    pi_t: np.ndarray          # pi on the tangent frame, length n
    pi_nor: np.ndarray        # pi on the normal frame, length p
    alpha_t: np.ndarray       # alpha restricted, n x n
    beta_t: np.ndarray        # beta restricted, n x n
    alpha_prime_t: np.ndarray  # alpha' restricted, n x n
    riem: np.ndarray          # induced curvature tensor, n^4
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def mean_curvature(self) -> np.ndarray:
        """Mean curvature vector of the induced connection, as an ambient vector."""
        traces = np.einsum("rii->r", self.h) / self.n
        return traces @ self.normal

    @property
    def mean_curvature_lc(self) -> np.ndarray:
        """Mean curvature vector of the Levi-Civita form."""
        traces = np.einsum("rii->r", self.hhat) / self.n
        return traces @ self.normal

    @property
    def mean_curvature_sq(self) -> float:
        traces = np.einsum("rii->r", self.h) / self.n
        return float(traces @ traces)

    @property
    def h_norm_sq(self) -> float:
        return float(np.sum(self.h * self.h))

    @property
    def pi_H(self) -> float:
        """pi(H) = <P, H>; only the normal part of P contributes."""
        return float(self.spec.P @ self.mean_curvature)

    def tangent_coords(self, X) -> np.ndarray:
        """Coordinates of a tangent vector in the tangent frame (checked)."""
        X = as_vector(X, self.dim, "tangent vector")
        x = self.tangent @ X
        residual = np.linalg.norm(X - x @ self.tangent)
        if residual > _TANGENCY_TOL * max(1.0, np.linalg.norm(X)):
            raise DimensionMismatch(
                f"vector is not tangent (normal residual {residual:.3e})"
            )
        return x

    def plane_coords(self, plane: Plane) -> tuple[np.ndarray, np.ndarray]:
        return self.tangent_coords(plane.e1), self.tangent_coords(plane.e2)


def _lc_tensor(I, u, Phi, A, B, c, kappa, mu):
    """Tangent-frame restriction of the Levi-Civita curvature, by term group."""
    es = np.einsum
    t = (c + 3.0) / 4.0 * (es("bc,ad->abcd", I, I) - es("ac,bd->abcd", I, I))
    t += (c + 3.0 - 4.0 * kappa) / 4.0 * (
        es("a,c,bd->abcd", u, u, I) - es("b,c,ad->abcd", u, u, I)
        + es("ac,b,d->abcd", I, u, u) - es("bc,a,d->abcd", I, u, u)
    )
    t += (c - 1.0) / 4.0 * (
        2.0 * es("ab,dc->abcd", Phi, Phi)
        + es("ac,db->abcd", Phi, Phi)
        - es("bc,da->abcd", Phi, Phi)
    )
    t += 0.5 * (
        es("bc,ad->abcd", A, A) - es("ac,bd->abcd", A, A)
        + es("ac,bd->abcd", B, B) - es("bc,ad->abcd", B, B)
    )
    t += (
        -es("ac,bd->abcd", I, A) + es("bc,ad->abcd", I, A)
        + es("a,c,bd->abcd", u, u, A) - es("b,c,ad->abcd", u, u, A)
        - es("ac,bd->abcd", A, I) + es("bc,ad->abcd", A, I)
        - es("bc,a,d->abcd", A, u, u) + es("ac,b,d->abcd", A, u, u)
    )
    t += mu * (
        es("b,c,ad->abcd", u, u, A) - es("a,c,bd->abcd", u, u, A)
        + es("bc,a,d->abcd", A, u, u) - es("ac,b,d->abcd", A, u, u)
    )
    return t


def _induced_tensor(model, spec, I, u, Phi, A, B, alpha_t, beta_t, ap_t, pi_t, pi_nor, h):
    """Full induced curvature tensor: ambient restriction + Gauss corrections."""
    es = np.einsum
    t = _lc_tensor(I, u, Phi, A, B, model.c, model.kappa, model.mu_contact)
    if spec.kind == KIND_FIRST:
        l1, l2 = spec.lambda1, spec.lambda2
        t += l1 * (es("ac,bd->abcd", alpha_t, I) - es("bc,ad->abcd", alpha_t, I))
        t += l2 * (es("ac,bd->abcd", I, alpha_t) - es("bc,ad->abcd", I, alpha_t))
        t += l2 * (l1 - l2) * (es("ac,bd->abcd", I, beta_t) - es("bc,ad->abcd", I, beta_t))
        gauss_coeff = l1 - l2
    else:
        a, b = spec.a, spec.b
        t += a * es("ab,cd->abcd", ap_t - ap_t.T, I)
        t += b * (es("ac,bd->abcd", ap_t, I) - es("bc,ad->abcd", ap_t, I))
        t += b * b * (
            es("b,c,ad->abcd", pi_t, pi_t, I) - es("a,c,bd->abcd", pi_t, pi_t, I)
        )
        gauss_coeff = b
    # Gauss equation solved for the induced curvature.
    t += es("rad,rbc->abcd", h, h) - es("rbd,rac->abcd", h, h)
    t -= gauss_coeff * (
        es("rbc,r,ad->abcd", h, pi_nor, I) - es("rac,r,bd->abcd", h, pi_nor, I)
    )
    return t


def attach(
    model: ContactPointModel,
    spec: ConnectionSpec,
    tangent_basis,
    hhat,
    tol: float = 1e-10,
) -> SubmanifoldPoint:
    """Build a submanifold germ from a tangent basis and its Levi-Civita form.

    The basis is orthonormalized (order- and direction-preserving); hhat is
    interpreted in the resulting frame.  The normal frame is the deterministic
    completion by standard basis vectors, so coordinate-aligned tangent frames
    get the remaining coordinate vectors, in index order, as normals.

    Induced second fundamental form: kind 1 subtracts lambda2 <P, e_r> off the
    diagonal of every slice (h = hhat - lambda2 g(.,.) P_perp); kind 2 leaves
    it unchanged.
    """
    d = model.dim
    if spec.dim != d:
        raise DimensionMismatch(f"connection dimension {spec.dim} != ambient {d}")
    E = orthonormalize(tangent_basis, tol)  # may raise RankDeficient
    n = E.shape[0]
    if E.shape[1] != d:
        raise DimensionMismatch(f"tangent vectors have length {E.shape[1]}, ambient is {d}")
    if not 3 <= n < d:
        raise DimensionMismatch(f"need 3 <= n < {d}, got n = {n}")
    N = complete_frame(E)
    p = d - n

    hhat = np.array(hhat, dtype=float)
    if hhat.shape != (p, n, n):
        raise DimensionMismatch(f"hhat must have shape {(p, n, n)}, got {hhat.shape}")
    asym = np.abs(hhat - np.transpose(hhat, (0, 2, 1))).max() if hhat.size else 0.0
    if asym > 1e-12:
        raise NonSymmetricH(f"hhat slices must be symmetric (max asymmetry {asym:.3e})")

    pi_nor = N @ spec.P
    h = hhat.copy()
    if spec.kind == KIND_FIRST:
        h -= spec.lambda2 * pi_nor[:, None, None] * np.eye(n)[None, :, :]

    xi_top_amb = E.T @ (E @ model.xi)
    P_top_amb = E.T @ (E @ spec.P)
    phat = E @ model.phi @ E.T
    fnor = N @ model.phi @ E.T
    hp_top = E @ model.hprime @ E.T
    php_top = E @ (model.phi @ model.hprime) @ E.T

    ct = correction_tensors(spec)
    alpha_t = E @ ct.alpha @ E.T
    beta_t = E @ ct.beta @ E.T
    ap_t = E @ spec.D @ E.T
    eta_t = E @ model.xi
    pi_t = E @ spec.P

    riem = _induced_tensor(
        model, spec, np.eye(n), eta_t, phat, hp_top, php_top,
        alpha_t, beta_t, ap_t, pi_t, pi_nor, h,
    )

    for arr in (E, N, hhat, h, riem):
        arr.setflags(write=False)

    return SubmanifoldPoint(
        model=model, spec=spec, n=n, p=p, tangent=E, normal=N,
        hhat=hhat, h=h,
        xi_top=xi_top_amb, xi_perp=model.xi - xi_top_amb,
        P_top=P_top_amb, P_perp=spec.P - P_top_amb,
        phat=phat, fnor=fnor, hprime_top=hp_top, phi_hprime_top=php_top,
        eta_t=eta_t, pi_t=pi_t, pi_nor=pi_nor,
        alpha_t=alpha_t, beta_t=beta_t, alpha_prime_t=ap_t,
        riem=riem,
    )


def _h_vector(sub: SubmanifoldPoint, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """h(X, Y) as an ambient (normal) vector, from tangent coordinates."""
    comps = np.einsum("rij,i,j->r", sub.h, x, y)
    return comps @ sub.normal


def induced_curvature(sub: SubmanifoldPoint, X, Y, Z, W) -> float:
    """R(X,Y,Z,W) of the induced connection for tangent vectors (cached tensor)."""
    x, y = sub.tangent_coords(X), sub.tangent_coords(Y)
    z, w = sub.tangent_coords(Z), sub.tangent_coords(W)
    return float(np.einsum("abcd,a,b,c,d->", sub.riem, x, y, z, w))


def induced_curvature_direct(sub: SubmanifoldPoint, X, Y, Z, W) -> float:
    """Reference evaluation bypassing the cached tensor.

    Ambient curvature of the connection plus the Gauss-equation corrections,
    all computed on the raw vectors.  Used to validate the tensor assembly.
    """
    x, y = sub.tangent_coords(X), sub.tangent_coords(Y)
    z, w = sub.tangent_coords(Z), sub.tangent_coords(W)
    val = ambient_curvature(sub.model, sub.spec, X, Y, Z, W)
    hxw, hyz = _h_vector(sub, x, w), _h_vector(sub, y, z)
    hyw, hxz = _h_vector(sub, y, w), _h_vector(sub, x, z)
    val += float(hxw @ hyz - hyw @ hxz)
    coeff = (
        sub.spec.lambda1 - sub.spec.lambda2
        if sub.spec.kind == KIND_FIRST
        else sub.spec.b
    )
    val -= coeff * (
        float(sub.spec.P @ hyz) * float(np.dot(X, W))
        - float(sub.spec.P @ hxz) * float(np.dot(Y, W))
    )
    return val


def _sectional_from_coords(sub: SubmanifoldPoint, v1: np.ndarray, v2: np.ndarray) -> float:
    r1221 = np.einsum("abcd,a,b,c,d->", sub.riem, v1, v2, v2, v1)
    r1212 = np.einsum("abcd,a,b,c,d->", sub.riem, v1, v2, v1, v2)
    return float(r1221 - r1212) / 2.0


def sectional(sub: SubmanifoldPoint, plane: Plane) -> float:
    """Symmetrized sectional curvature K of a tangent 2-plane."""
    v1, v2 = sub.plane_coords(plane)
    return _sectional_from_coords(sub, v1, v2)


def _sectional_batch(sub: SubmanifoldPoint, V1: np.ndarray, V2: np.ndarray) -> np.ndarray:
    """K for a batch of orthonormal coordinate pairs, shapes (k, n)."""
    r1221 = np.einsum("abcd,ka,kb,kc,kd->k", sub.riem, V1, V2, V2, V1)
    r1212 = np.einsum("abcd,ka,kb,kc,kd->k", sub.riem, V1, V2, V1, V2)
    return (r1221 - r1212) / 2.0


def scalar_tau_pair(sub: SubmanifoldPoint) -> tuple[float, float]:
    """Scalar curvature through both defining formulas.

    First value: sum of K over coordinate 2-planes of the tangent frame.
    Second: half the double sum of R(e_i, e_j, e_j, e_i).  They must agree.
    """
    R = sub.riem
    n = sub.n
    k_sum = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            k_sum += (R[i, j, j, i] - R[i, j, i, j]) / 2.0
    double = float(np.einsum("ijji->", R)) / 2.0
    return float(k_sum), double


def scalar_tau(sub: SubmanifoldPoint) -> float:
    """Scalar curvature (sum of sectional curvatures over coordinate planes)."""
    return scalar_tau_pair(sub)[0]


def ricci(sub: SubmanifoldPoint, X, symmetrized: bool = False, completion=None) -> float:
    """Ricci curvature of a unit tangent vector.

    Raw variant: sum of R(X, e_j, e_j, X) over an orthonormal completion of X.
    Symmetrized variant: sum of sectional curvatures K(X ^ e_j).  Both are
    independent of the completion (the X-term of a full-frame trace vanishes
    by the antisymmetry of R in its first two slots); an explicit
    ``completion`` (rows orthonormal, orthogonal to X) can be supplied to
    exercise that.
    """
    x = sub.tangent_coords(X)
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise ValueError("ricci requires a unit vector")
    R = sub.riem
    if completion is None:
        basis = np.eye(sub.n)  # full-frame trace; X-term contributes zero
    else:
        basis = np.array([sub.tangent_coords(v) for v in completion])
    raw = float(np.einsum("abcd,a,kb,kc,d->", R, x, basis, basis, x))
    if not symmetrized:
        return raw
    flipped = float(np.einsum("abcd,a,kb,c,kd->", R, x, basis, x, basis))
    return (raw - flipped) / 2.0


def ricci_form(sub: SubmanifoldPoint) -> np.ndarray:
    """Symmetric matrix Q with x^T Q x = symmetrized Ricci of the direction x.

    Built from the bilinear traces M1[a,d] = sum_b R[a,b,b,d] and
    M2[a,c] = sum_b R[a,b,c,b]; only the symmetric part matters for the
    quadratic form.  Its smallest eigenvalue over unit vectors is the exact
    k = n Ricci infimum, and tr Q = 2 tau.
    """
    M1 = np.einsum("abbd->ad", sub.riem)
    M2 = np.einsum("abcb->ac", sub.riem)
    Q = (M1 - M2) / 2.0
    return (Q + Q.T) / 2.0


@dataclass(frozen=True)
class ThetaEstimate:
    """k-Ricci invariant estimate: value, how it was obtained, sample count.

    mode 'exact_eigen' (k = n) and 'grid' (k = 2 over the plane Grassmannian,
    n = 3) are exact up to the refinement target; 'multistart' values are
    sampled upper bounds on the true infimum and are labeled as estimates.
    """

    value: float
    mode: str
    samples: int

    @property
    def exact(self) -> bool:
        return self.mode in ("exact_eigen", "grid")


def _per_direction_form(sub: SubmanifoldPoint, x: np.ndarray) -> np.ndarray:
    """Symmetric form S_x with sum over an orthonormal set {v} of S_x(v,v)
    equal to the symmetrized partial Ricci of x over that set."""
    M = np.einsum("abcd,a,d->bc", sub.riem, x, x)
    Nf = np.einsum("abcd,a,c->bd", sub.riem, x, x)
    S = (M - Nf) / 2.0
    return (S + S.T) / 2.0


def _partial_ricci_min(sub: SubmanifoldPoint, x: np.ndarray, k: int) -> float:
    """inf over k-planes containing x of the k-Ricci sum at x.

    For fixed x the infimum over the remaining (k-1) directions is exact: the
    sum of the k-1 smallest eigenvalues of S_x restricted to the orthogonal
    complement of x inside the tangent space.
    """
    n = sub.n
    S = _per_direction_form(sub, x)
    basis = complete_frame(x[None, :] / np.linalg.norm(x))
    Sperp = basis @ S @ basis.T
    w = np.linalg.eigvalsh(Sperp)
    return float(np.sum(w[: k - 1]))


def _theta_grid_n3(sub: SubmanifoldPoint, samples: int) -> tuple[float, int]:
    """k = 2, n = 3: planes are orthogonal complements of unit vectors."""

    def plane_basis(U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ref = np.where(np.abs(U[:, [0]]) < 0.9, np.array([[1.0, 0.0, 0.0]]), np.array([[0.0, 1.0, 0.0]]))
        v1 = np.cross(U, ref)
        v1 /= np.linalg.norm(v1, axis=1, keepdims=True)
        v2 = np.cross(U, v1)
        v2 /= np.linalg.norm(v2, axis=1, keepdims=True)
        return v1, v2

    def f(U: np.ndarray) -> np.ndarray:
        v1, v2 = plane_basis(U)
        return _sectional_batch(sub, v1, v2)

    _, val = extremize_on_sphere(f, 3, samples, minimize=True)
    return val, samples


def theta_k(sub: SubmanifoldPoint, k: int, strategy: str = "auto", samples: int = 10_000) -> ThetaEstimate:
    """The normalized k-Ricci infimum Theta_k over k-planes and unit directions.

    k = n reduces to an eigenvalue problem of ``ricci_form`` (exact); k = 2 on
    n = 3 is a dense grid over the plane Grassmannian with local refinement;
    everything else is a multistart search over the unit direction x with the
    plane infimum solved exactly per direction (eigenvalue sums), reported as
    an estimate.
    """
    n = sub.n
    if not 2 <= k <= n:
        raise ValueError(f"k must satisfy 2 <= k <= n = {n}, got {k}")
    if strategy not in ("auto", "exact_eigen", "grid", "multistart"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "auto":
        if k == n:
            strategy = "exact_eigen"
        elif k == 2 and n == 3:
            strategy = "grid"
        else:
            strategy = "multistart"

    if strategy == "exact_eigen":
        if k != n:
            raise ValueError("exact_eigen applies only to k = n")
        w = np.linalg.eigvalsh(ricci_form(sub))
        return ThetaEstimate(float(w[0]) / (n - 1), "exact_eigen", 0)

    if strategy == "grid":
        if k != 2 or n != 3:
            raise ValueError("grid mode is implemented for k = 2 on n = 3")
        val, count = _theta_grid_n3(sub, samples)
        return ThetaEstimate(val, "grid", count)

    def f(U: np.ndarray) -> np.ndarray:
        return np.array([_partial_ricci_min(sub, u, k) for u in U])

    count = max(512, samples // 8)
    _, val = extremize_on_sphere(f, n, count, minimize=True)
    return ThetaEstimate(val / (k - 1), "multistart", count)


@dataclass(frozen=True)
class CasoratiCurvatures:
    """Casorati curvature, its hyperplane extrema, and the delta invariants.

    C(L) for a hyperplane L with unit normal u is the normalized squared
    Frobenius norm of the h-slices compressed by the projector off u; as a
    function of u it is a degree-4 polynomial on the sphere, extremized by
    dense sampling plus refinement (deterministic layout).  ``c_of`` evaluates
    C(L) for an arbitrary subspace given by tangent vectors.
    """

    C: float
    inf_CL: float
    sup_CL: float
    delta_c: float
    delta_c_hat: float
    argmin_u: np.ndarray
    argmax_u: np.ndarray
    samples: int
    c_of: object = field(default=None, repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "C": self.C,
            "inf_CL": self.inf_CL,
            "sup_CL": self.sup_CL,
            "delta_c": self.delta_c,
            "delta_c_hat": self.delta_c_hat,
        }


def casorati_of_subspace(sub: SubmanifoldPoint, basis) -> float:
    """C(L) for an l-dimensional subspace given by tangent vectors."""
    B = np.array([sub.tangent_coords(v) for v in np.atleast_2d(np.asarray(basis, float))])
    B = orthonormalize(B)
    l = B.shape[0]
    restricted = np.einsum("ia,rab,jb->rij", B, sub.h, B)
    return float(np.sum(restricted * restricted)) / l


def _hyperplane_values(sub: SubmanifoldPoint, U: np.ndarray) -> np.ndarray:
    """C(L) for hyperplanes with unit normals U (batch), via
    ||Q h Q||_F^2 = ||h||_F^2 - 2 u^T h^2 u + (u^T h u)^2 per slice."""
    n = sub.n
    h = sub.h
    total = np.full(U.shape[0], np.sum(h * h))
    h2 = np.einsum("rab,rbc->rac", h, h)
    total -= 2.0 * np.einsum("rab,ka,kb->k", h2, U, U)
    total += np.einsum("kr->k", np.einsum("rab,ka,kb->kr", h, U, U) ** 2)
    return total / (n - 1)


def casorati(sub: SubmanifoldPoint, samples: int = 10_000) -> CasoratiCurvatures:
    """Casorati curvature C, hyperplane inf/sup of C(L), and the normalized
    delta invariants delta_c(n-1) = C/2 + (n+1)/(2n) inf C(L) and
    delta_c_hat(n-1) = 2C - (2n-1)/(2n) sup C(L).

    Deterministic for a fixed sample count; memoized on the point (the search
    is the dominant cost and several inequality checks share it).
    """
    key = ("casorati", samples)
    hit = sub.cache.get(key)
    if hit is not None:
        return hit
    n = sub.n
    C = sub.h_norm_sq / n
    f = lambda U: _hyperplane_values(sub, U)
    U0 = sphere_samples(n, samples)
    vals = f(U0)
    umin, inf_val = refine_on_sphere(f, U0[int(np.argmin(vals))], minimize=True)
    umax, sup_val = refine_on_sphere(f, U0[int(np.argmax(vals))], minimize=False)
    delta_c = 0.5 * C + (n + 1) / (2.0 * n) * inf_val
    delta_hat = 2.0 * C - (2.0 * n - 1) / (2.0 * n) * sup_val
    result = CasoratiCurvatures(
        C=C, inf_CL=float(inf_val), sup_CL=float(sup_val),
        delta_c=float(delta_c), delta_c_hat=float(delta_hat),
        argmin_u=umin, argmax_u=umax, samples=samples,
        c_of=lambda basis: casorati_of_subspace(sub, basis),
    )
    sub.cache[key] = result
    return result
