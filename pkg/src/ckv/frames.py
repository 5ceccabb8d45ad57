"""Small dense linear algebra on orthonormal frames.

Everything in this package stores tensors as component arrays in a fixed
orthonormal frame, so the metric is the identity and inner products are plain
dot products.  This module provides the frame-level primitives: Gram-Schmidt
orthonormalization with a rank guard, completion of a frame to a full basis,
tangent/normal splitting, and restriction of bilinear forms to 2-planes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, RankDeficient

DEFAULT_TOL = 1e-10


def as_vector(v, dim: int | None = None, name: str = "vector") -> np.ndarray:
    """Copy to a finite 1-d float array, optionally checking its length.

    Always copies, so freezing the result never touches caller-owned arrays.
    """
    arr = np.array(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name}: expected a 1-d array, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"{name}: expected length {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: entries must be finite")
    return arr


def as_matrix(a, dim: int | None = None, name: str = "matrix") -> np.ndarray:
    """Copy to a finite square 2-d float array, optionally checking its size."""
    arr = np.array(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name}: expected a square matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"{name}: expected size {dim}x{dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: entries must be finite")
    return arr


def orthonormalize(vectors, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormalize a linearly independent family, preserving order and span.

    Modified Gram-Schmidt with one re-orthogonalization pass.  The first vector
    keeps its direction, so already-orthogonal inputs only get normalized.

    Raises RankDeficient when the numerical rank (singular values relative to
    the largest) falls below the family size.
    """
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    if V.size == 0:
        return V.reshape(0, 0)
    if not np.all(np.isfinite(V)):
        raise ValueError("orthonormalize: entries must be finite")
    k, d = V.shape
    if k > d:
        raise RankDeficient(f"{k} vectors cannot be independent in dimension {d}")
    sv = np.linalg.svd(V, compute_uv=False)
    if sv[-1] < tol * sv[0]:
        raise RankDeficient(
            f"numerical rank below {k} (smallest/largest singular value {sv[-1] / sv[0]:.3e})"
        )
    out = V.copy()
    for i in range(k):
        for _ in range(2):  # second pass kills rounding residue
            for j in range(i):
                out[i] -= np.dot(out[i], out[j]) * out[j]
        out[i] /= np.linalg.norm(out[i])
    return out


def complete_frame(frame: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of ``frame`` rows.

    Candidates are the standard basis vectors in index order, so coordinate
    frames complete to the remaining coordinate vectors (sign included), which
    keeps scenario files readable.
    """
    frame = np.atleast_2d(np.asarray(frame, dtype=float))
    k, d = frame.shape
    basis = [frame[i] for i in range(k)]
    extra = []
    for idx in range(d):
        cand = np.zeros(d)
        cand[idx] = 1.0
        for _ in range(2):
            for b in basis:
                cand -= np.dot(cand, b) * b
        norm = np.linalg.norm(cand)
        if norm > 1e-6:
            cand /= norm
            basis.append(cand)
            extra.append(cand)
        if len(basis) == d:
            break
    if len(basis) != d:
        raise RankDeficient("could not complete frame to a full basis")
    return np.array(extra)


def split(frame: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split ``v`` into its component in span(frame rows) and the orthogonal rest."""
    frame = np.atleast_2d(np.asarray(frame, dtype=float))
    v = as_vector(v, frame.shape[1], "split input")
    tangential = frame.T @ (frame @ v)
    return tangential, v - tangential


def restrict_form(B: np.ndarray, plane: "Plane") -> np.ndarray:
    """Restrict a (0,2)-tensor to a plane's basis: out[i][j] = B(e_i, e_j)."""
    B = as_matrix(B, name="restrict_form input")
    if B.shape[0] != plane.e1.shape[0]:
        raise DimensionMismatch(
            f"form size {B.shape[0]} does not match plane dimension {plane.e1.shape[0]}"
        )
    e = np.stack([plane.e1, plane.e2])
    return e @ B @ e.T


@dataclass(frozen=True)
class Plane:
    """Ordered orthonormal pair spanning a 2-plane."""

    e1: np.ndarray
    e2: np.ndarray

    def __post_init__(self):
        e1 = as_vector(self.e1, name="plane.e1")
        e2 = as_vector(self.e2, e1.shape[0], name="plane.e2")
        if abs(np.linalg.norm(e1) - 1.0) > 1e-12 or abs(np.linalg.norm(e2) - 1.0) > 1e-12:
            raise ValueError("plane basis vectors must be unit to 1e-12")
        if abs(np.dot(e1, e2)) > 1e-12:
            raise ValueError("plane basis vectors must be orthogonal to 1e-12")
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)

    @classmethod
    def from_span(cls, v1, v2, tol: float = DEFAULT_TOL) -> "Plane":
        """Plane spanned by two independent (not necessarily orthonormal) vectors."""
        basis = orthonormalize([v1, v2], tol)
        return cls(basis[0], basis[1])

    def rotated(self, angle: float) -> "Plane":
        """Same plane, basis rotated in-plane by ``angle``."""
        c, s = np.cos(angle), np.sin(angle)
        return Plane(c * self.e1 + s * self.e2, -s * self.e1 + c * self.e2)

    def reflected(self) -> "Plane":
        """Same plane with the second basis vector flipped."""
        return Plane(self.e1, -self.e2)
