"""The two generalized semi-symmetric non-metric connections at a point.

Both connections are deformations of the Levi-Civita connection driven by a
vector field P (through the 1-form pi = <P, .>) and by the value D of the
covariant derivative of pi at the point.  D is independent input rather than
something derived from P: at a single point the derivative is unconstrained
by P's value, and every verified inequality treats it as given tensor data.

Kind 1 deforms by lambda1 * pi(Y) X - lambda2 * g(X,Y) P; lambda1 = lambda2 = 1
recovers the semi-symmetric metric connection, lambda1 = 1, lambda2 = 0 the
semi-symmetric non-metric one.  Kind 2 deforms by a * pi(X) Y + b * pi(Y) X.

Naming note: both the contact parameter mu and the trace of the correction
tensor beta are conventionally called mu; here the former is ``mu_contact``
on the model and the latter ``trace_beta`` to keep them apart.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contact import ContactPointModel, curvature_lc
from .errors import DimensionMismatch
from .frames import as_matrix, as_vector

__all__ = [
    "ConnectionSpec",
    "first_connection",
    "second_connection",
    "CorrectionTensors",
    "correction_tensors",
    "ambient_curvature",
]

KIND_FIRST = 1
KIND_SECOND = 2


@dataclass(frozen=True)
class ConnectionSpec:
    """Connection parameters plus the pointwise data P and D = grad(pi).

    For kind 1 the pair (lambda1, lambda2) is set and (a, b) is None; for
    kind 2 the other way around.
    """

    kind: int
    P: np.ndarray
    D: np.ndarray
    lambda1: float | None = None
    lambda2: float | None = None
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        P = as_vector(self.P, name="P")
        D = as_matrix(self.D, P.shape[0], "D")
        P.setflags(write=False)
        D.setflags(write=False)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "D", D)
        if self.kind == KIND_FIRST:
            if self.lambda1 is None or self.lambda2 is None:
                raise ValueError("kind-1 connection needs lambda1 and lambda2")
            if self.a is not None or self.b is not None:
                raise ValueError("kind-1 connection must not carry (a, b)")
        elif self.kind == KIND_SECOND:
            if self.a is None or self.b is None:
                raise ValueError("kind-2 connection needs a and b")
            if self.lambda1 is not None or self.lambda2 is not None:
                raise ValueError("kind-2 connection must not carry (lambda1, lambda2)")
        else:
            raise ValueError(f"connection kind must be 1 or 2, got {self.kind}")

    @property
    def dim(self) -> int:
        return self.P.shape[0]

    def pi(self, X) -> float:
        """pi(X) = <P, X>."""
        return float(np.dot(self.P, X))


def first_connection(lambda1: float, lambda2: float, P, D) -> ConnectionSpec:
    return ConnectionSpec(kind=KIND_FIRST, P=P, D=D, lambda1=lambda1, lambda2=lambda2)


def second_connection(a: float, b: float, P, D) -> ConnectionSpec:
    return ConnectionSpec(kind=KIND_SECOND, P=P, D=D, a=a, b=b)


@dataclass(frozen=True)
class CorrectionTensors:
    """The (0,2) correction tensors and their full-frame traces.

    alpha(X,Y) = D(X,Y) - lambda1 pi(X) pi(Y) + (lambda2/2) g(X,Y) pi(P)
    beta(X,Y)  = (pi(P)/2) g(X,Y) + pi(X) pi(Y)
    alpha'     = D

    For a kind-2 spec the lambda terms are absent, so alpha degenerates to D.
    The trace fields are the ambient matrix traces; the inequality assembler
    restricts the matrices to the submanifold frame itself.
    """

    alpha: np.ndarray
    beta: np.ndarray
    alpha_prime: np.ndarray
    trace_alpha: float
    trace_beta: float
    trace_alpha_prime: float


def correction_tensors(spec: ConnectionSpec) -> CorrectionTensors:
    d = spec.dim
    P, D = spec.P, spec.D
    pi_P = float(P @ P)
    l1 = spec.lambda1 if spec.kind == KIND_FIRST else 0.0
    l2 = spec.lambda2 if spec.kind == KIND_FIRST else 0.0
    alpha = D - l1 * np.outer(P, P) + (l2 / 2.0) * pi_P * np.eye(d)
    beta = (pi_P / 2.0) * np.eye(d) + np.outer(P, P)
    return CorrectionTensors(
        alpha=alpha,
        beta=beta,
        alpha_prime=D.copy(),
        trace_alpha=float(np.trace(alpha)),
        trace_beta=float(np.trace(beta)),
        trace_alpha_prime=float(np.trace(D)),
    )


def ambient_curvature(model: ContactPointModel, spec: ConnectionSpec, X, Y, Z, W) -> float:
    """Curvature <R(X,Y)Z, W> of the chosen connection on the ambient space.

    Reference evaluation on arbitrary ambient vectors: the Levi-Civita value
    plus the correction terms of the chosen kind.  With all connection
    parameters zero this is exactly ``curvature_lc``.
    """
    d = model.dim
    if spec.dim != d:
        raise DimensionMismatch(f"connection dimension {spec.dim} != ambient {d}")
    X = as_vector(X, d, "X")
    Y = as_vector(Y, d, "Y")
    Z = as_vector(Z, d, "Z")
    W = as_vector(W, d, "W")
    base = curvature_lc(model, X, Y, Z, W)

    if spec.kind == KIND_FIRST:
        ct = correction_tensors(spec)
        l1, l2 = spec.lambda1, spec.lambda2
        al = lambda u, v: float(u @ ct.alpha @ v)
        be = lambda u, v: float(u @ ct.beta @ v)
        return base + (
            l1 * al(X, Z) * (Y @ W) - l1 * al(Y, Z) * (X @ W)
            + l2 * (X @ Z) * al(Y, W) - l2 * (Y @ Z) * al(X, W)
            + l2 * (l1 - l2) * ((X @ Z) * be(Y, W) - (Y @ Z) * be(X, W))
        )

    a, b = spec.a, spec.b
    ap = lambda u, v: float(u @ spec.D @ v)
    piX, piY, piZ = spec.pi(X), spec.pi(Y), spec.pi(Z)
    return base + (
        -a * ap(Y, X) * (Z @ W) + a * ap(X, Y) * (Z @ W)
        - b * ap(Y, Z) * (X @ W) + b * ap(X, Z) * (Y @ W)
        + b * b * piY * piZ * (X @ W) - b * b * piX * piZ * (Y @ W)
    )
