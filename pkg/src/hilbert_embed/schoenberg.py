"""Hilbert-space embeddability: spectral test, witnesses, kernels, coordinates.

A finite metric embeds isometrically in a Hilbert space exactly when the
doubly-centered squared-distance matrix is negative semidefinite. When it
is not, the top eigenvector of that matrix is a zero-sum vector ``alpha``
with ``alpha^T D alpha > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, NotEmbeddable, SizeMismatch
from .metric import DEFAULT_TOL, MetricSpace
from .symmat import default_tol, double_center, jacobi_eigen


@dataclass(frozen=True, eq=False)
class EmbeddabilityReport:
    embeddable: bool
    lambda_max: float
    witness: np.ndarray | None = None

    def to_json(self) -> dict:
        return {
            "embeddable": self.embeddable,
            "lambda_max": self.lambda_max,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


@dataclass(frozen=True, eq=False)
class Kernel:
    base: int
    K: np.ndarray


@dataclass(frozen=True, eq=False)
class Embedding:
    base: int
    coords: np.ndarray  # shape (n, rank)
    residual: float

    @property
    def rank(self) -> int:
        return self.coords.shape[1]

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "rank": self.rank,
            "coords": self.coords.tolist(),
            "residual": self.residual,
        }


def squared_distance_matrix(m: MetricSpace) -> np.ndarray:
    return m.d * m.d


def quadratic_form(D, alpha) -> float:
    alpha = np.asarray(alpha, dtype=float)
    return float(alpha @ np.asarray(D, dtype=float) @ alpha)


def is_embeddable(m: MetricSpace, tol: float = DEFAULT_TOL) -> EmbeddabilityReport:
    """Spectral embeddability test with a witness on failure.

    The verdict compares the largest eigenvalue of the centered ``D`` with
    ``tol * max(1, spectral radius)``. The witness is the unit eigenvector of
    that eigenvalue, re-centered so its entries sum to zero, first nonzero
    entry positive.
    """
    D = squared_distance_matrix(m)
    eig = jacobi_eigen(double_center(D))
    lam = float(eig.eigenvalues[-1])
    if lam <= default_tol(eig.eigenvalues, tol):
        return EmbeddabilityReport(True, lam, None)
    alpha = eig.eigenvectors[:, -1].copy()
    alpha -= alpha.mean()
    alpha /= np.linalg.norm(alpha)
    return EmbeddabilityReport(False, lam, alpha)


def _check_base(m: MetricSpace, x0: int) -> int:
    if not (0 <= x0 < m.n):
        raise IndexOutOfRange(f"base point {x0} outside 0..{m.n - 1}")
    return int(x0)


def kernel_at_base(m: MetricSpace, x0: int) -> Kernel:
    """``K[x, y] = d(x, x0)^2 + d(y, x0)^2 - d(x, y)^2``."""
    x0 = _check_base(m, x0)
    D = squared_distance_matrix(m)
    r = D[:, x0]
    K = r[:, None] + r[None, :] - D
    K[x0, :] = 0.0
    K[:, x0] = 0.0
    return Kernel(x0, K)


def kernel_trace_profile(m: MetricSpace) -> list[float]:
    # trace K = sum_x 2 d(x, x0)^2
    return [float(np.trace(kernel_at_base(m, x0).K)) for x0 in range(m.n)]


def embed_coordinates(m: MetricSpace, x0: int = 0, tol: float = DEFAULT_TOL) -> Embedding:
    """Coordinates whose Euclidean distances reproduce ``m``.

    Factorizes the Gram matrix ``K/2`` anchored at ``x0``; eigenvalues in
    ``[-tol, 0]`` (``tol`` scaled by the spectral radius) are clamped to zero
    and only eigenvalues above ``tol`` contribute a coordinate axis.
    """
    x0 = _check_base(m, x0)
    gram = kernel_at_base(m, x0).K / 2
    eig = jacobi_eigen(gram)
    w, u = eig.eigenvalues, eig.eigenvectors
    thr = default_tol(w, tol)
    if w[0] < -thr:
        raise NotEmbeddable(
            f"Gram matrix at base {x0} has eigenvalue {w[0]:.6g} < -{thr:.3g}"
        )
    keep = np.flatnonzero(w > thr)[::-1]  # largest first
    coords = u[:, keep] * np.sqrt(w[keep])
    return Embedding(x0, coords, _max_abs_error(coords, m))


def _pairwise(coords: np.ndarray) -> np.ndarray:
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _max_abs_error(coords, m: MetricSpace) -> float:
    return float(np.max(np.abs(_pairwise(coords) - m.d), initial=0.0))


def verify_isometry(e: Embedding, m: MetricSpace, eps: float = 1e-12) -> float:
    """Largest relative distance error over all pairs (0 for a single point)."""
    if e.coords.shape[0] != m.n:
        raise SizeMismatch(f"embedding has {e.coords.shape[0]} points, metric has {m.n}")
    if m.n < 2:
        return 0.0
    err = np.abs(_pairwise(e.coords) - m.d) / np.maximum(m.d, eps)
    iu = np.triu_indices(m.n, 1)
    return float(err[iu].max())
