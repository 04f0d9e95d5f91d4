"""Input checks shared by the estimators and the CLI."""

import numpy as np
from sklearn.utils import check_array

from .errors import SizeMismatch
from .metric import MetricSpace, WeightedGraph, validate_metric


def check_distance_matrix(X, tol=1e-9, labels=None) -> MetricSpace:
    """Coerce ``X`` to a validated metric; ``tol`` is relative to the largest distance."""
    if isinstance(X, MetricSpace):
        return X
    a = check_array(X, dtype=np.float64, ensure_all_finite=True, ensure_min_samples=1)
    if a.shape[0] != a.shape[1]:
        raise SizeMismatch(f"precomputed distances must be square, got shape {a.shape}")
    slack = tol * max(1.0, float(np.abs(a).max(initial=0.0)))
    return validate_metric(a, tol=slack, labels=labels)


def check_points(X) -> np.ndarray:
    return check_array(X, dtype=np.float64, ensure_all_finite=True, ensure_min_samples=1)


def check_graph(X) -> WeightedGraph:
    """Accept a :class:`WeightedGraph` or a square adjacency/weight matrix."""
    if isinstance(X, WeightedGraph):
        return X
    a = check_array(X, dtype=np.float64, ensure_all_finite=True, ensure_min_samples=1)
    if a.shape[0] != a.shape[1]:
        raise SizeMismatch(f"adjacency matrix must be square, got shape {a.shape}")
    return WeightedGraph.from_adjacency(np.maximum(a, a.T))
