"""Dense symmetric matrix algebra: Jacobi eigensolver, centering, definiteness."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonFiniteEntry, SizeMismatch

JACOBI_RTOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def symmetrize(a) -> np.ndarray:
    """Return ``(A + A^T) / 2`` as a float array, so symmetry holds exactly."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SizeMismatch(f"expected a square matrix, got shape {a.shape}")
    return (a + a.T) / 2


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def _normalize_signs(v: np.ndarray) -> np.ndarray:
    """Flip columns so the first entry that is not negligible is positive."""
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        big = np.flatnonzero(np.abs(col) > 1e-12 * max(np.abs(col).max(), 1e-300))
        if big.size and col[big[0]] < 0:
            v[:, j] = -col
    return v


def jacobi_eigen(a) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops to
    ``1e-14 * ||A||_F`` (or after 100 sweeps). Eigenvalues come back
    ascending, eigenvectors with the first non-negligible entry positive.
    """
    a = symmetrize(a)
    if not np.all(np.isfinite(a)):
        raise NonFiniteEntry("matrix has non-finite entries")
    n = a.shape[0]
    v = np.eye(n)
    offdiag = ~np.eye(n, dtype=bool)
    scale = np.linalg.norm(a)
    target = JACOBI_RTOL * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a[offdiag])
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                with np.errstate(over="ignore"):
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if not np.isfinite(theta):
                    # apq negligible against the diagonal gap
                    a[p, q] = a[q, p] = 0.0
                    continue
                t = 1.0 if theta == 0.0 else np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], _normalize_signs(v[:, order]))


def batched_jacobi_eigenvalues(a: np.ndarray, sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a stack of symmetric matrices, shape ``(B, n, n)``.

    Same rotation scheme as :func:`jacobi_eigen`, applied to the whole stack
    at once (no eigenvectors). Returns ascending eigenvalues, shape ``(B, n)``.
    """
    a = np.array(a, dtype=float)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise SizeMismatch(f"expected shape (B, n, n), got {a.shape}")
    a = (a + a.transpose(0, 2, 1)) / 2
    n = a.shape[1]
    # batch axis last so row and column slices are contiguous
    a = np.ascontiguousarray(a.transpose(1, 2, 0))
    offdiag = ~np.eye(n, dtype=bool)
    target = JACOBI_RTOL * np.sqrt(np.sum(a * a, axis=(0, 1)))
    for _ in range(sweeps):
        if np.all(np.sqrt(np.sum(a[offdiag] ** 2, axis=0)) <= target):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where((apq != 0.0) & np.isfinite(theta), t, 0.0)
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p].copy()
                row_q = a[q].copy()
                a[p] = c * row_p - s * row_q
                a[q] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    idx = np.arange(n)
    return np.sort(a[idx, idx].T, axis=1)


def double_center(a) -> np.ndarray:
    """``(I - J/n)^T A (I - J/n)``: subtract row and column means, add grand mean."""
    a = symmetrize(a)
    row = a.mean(axis=1, keepdims=True)
    col = a.mean(axis=0, keepdims=True)
    m = a - row - col + a.mean()
    return (m + m.T) / 2


class Definiteness(str, enum.Enum):
    NEGATIVE_SEMIDEFINITE = "NegativeSemiDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemiDefinite"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"


@dataclass(frozen=True)
class DefinitenessReport:
    kind: Definiteness
    lambda_min: float
    lambda_max: float
    tol: float


def default_tol(eigenvalues, tol: float = 1e-9) -> float:
    """Scale an absolute tolerance by the spectral radius (never below ``tol``)."""
    radius = float(np.max(np.abs(eigenvalues), initial=0.0))
    return tol * max(1.0, radius)


def definiteness(a, tol: float | None = None) -> DefinitenessReport:
    """Classify by eigenvalue signs; eigenvalues within ``tol`` of zero count as zero.

    Without ``tol`` the threshold is ``1e-9 * max(1, |lambda|_max)``.
    """
    w = jacobi_eigen(a).eigenvalues
    thr = default_tol(w) if tol is None else tol
    lo, hi = float(w[0]), float(w[-1])
    if hi <= thr and lo >= -thr:
        kind = Definiteness.ZERO
    elif hi <= thr:
        kind = Definiteness.NEGATIVE_SEMIDEFINITE
    elif lo >= -thr:
        kind = Definiteness.POSITIVE_SEMIDEFINITE
    else:
        kind = Definiteness.INDEFINITE
    return DefinitenessReport(kind, lo, hi, thr)


def centered_sum_of_squares(points) -> tuple[float, float]:
    """Both sides of ``n * sum_i |a_i - mean|^2 == sum_{i<j} |a_i - a_j|^2``."""
    try:
        x = np.array(points, dtype=float)
    except ValueError as exc:
        raise DimensionMismatch("points have inconsistent dimensions") from exc
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] < 1:
        raise DimensionMismatch(f"expected n >= 1 points of equal dimension, got shape {x.shape}")
    n = x.shape[0]
    lhs = n * float(np.sum((x - x.mean(axis=0)) ** 2))
    rhs = 0.0
    for i in range(n):
        diff = x[i + 1:] - x[i]
        rhs += float(np.sum(diff * diff))
    return lhs, rhs
