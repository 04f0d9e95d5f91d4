"""scikit-learn style wrappers around the embedding and geometric-spectrum code."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.metrics import pairwise_distances
from sklearn.utils.validation import check_is_fitted

from ._validation import check_distance_matrix, check_graph, check_points
from .errors import NotEmbeddable, SizeMismatch
from .geomspec import DEFAULT_BUDGET, classic_lambda2, geometric_fiedler
from .metric import MetricSpace, WeightedGraph, critical_graph, shortest_path_metric
from .schoenberg import embed_coordinates, is_embeddable, kernel_at_base, kernel_trace_profile


class HilbertEmbedding(TransformerMixin, BaseEstimator):
    """Exact isometric embedding of a finite metric into Euclidean space.

    Parameters
    ----------
    base : int, default=0
        Index of the point placed at the origin.
    tol : float, default=1e-9
        Eigenvalue tolerance, scaled by the spectral radius.
    metric : {"precomputed", "euclidean", ...}, default="precomputed"
        With ``"precomputed"`` the input to ``fit`` is a distance matrix;
        otherwise it is a sample matrix and distances come from
        :func:`sklearn.metrics.pairwise_distances`.

    Attributes
    ----------
    embeddable_ : bool
    lambda_max_ : float
        Largest eigenvalue of the doubly-centered squared distances.
    witness_ : ndarray or None
        Zero-sum vector certifying non-embeddability (only set on failure,
        in which case ``fit`` raises).
    embedding_ : ndarray of shape (n_samples, rank)
    kernel_ : ndarray of shape (n_samples, n_samples)
    critical_graph_ : CriticalGraph
    trace_profile_ : list of float
    """

    def __init__(self, base=0, tol=1e-9, metric="precomputed"):
        self.base = base
        self.tol = tol
        self.metric = metric

    def _distances(self, X):
        if self.metric == "precomputed":
            return check_distance_matrix(X, tol=self.tol)
        pts = check_points(X)
        self._fit_points = pts
        return check_distance_matrix(pairwise_distances(pts, metric=self.metric), tol=self.tol)

    def fit(self, X, y=None):
        space = self._distances(X)
        report = is_embeddable(space, self.tol)
        self.metric_space_ = space
        self.embeddable_ = report.embeddable
        self.lambda_max_ = report.lambda_max
        self.witness_ = report.witness
        self.n_features_in_ = space.n if self.metric == "precomputed" else self._fit_points.shape[1]
        if not report.embeddable:
            err = NotEmbeddable(
                f"metric is not Hilbert-embeddable (lambda_max = {report.lambda_max:.6g})"
            )
            err.report = report
            raise err
        emb = embed_coordinates(space, self.base, self.tol)
        self.embedding_ = emb.coords
        self.residual_ = emb.residual
        self.rank_ = emb.rank
        self.kernel_ = kernel_at_base(space, emb.base).K
        self.critical_graph_ = critical_graph(space)
        self.trace_profile_ = kernel_trace_profile(space)
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).embedding_

    def transform(self, X):
        """Place new points given their distances to the fitted points.

        With ``metric="precomputed"``, ``X`` has shape ``(n_new, n_fitted)``.
        The result is exact whenever the enlarged metric still embeds in the
        span of the fitted coordinates.
        """
        check_is_fitted(self, "embedding_")
        if self.metric == "precomputed":
            d_new = check_points(X)
        else:
            d_new = pairwise_distances(check_points(X), self._fit_points, metric=self.metric)
        n = self.metric_space_.n
        if d_new.shape[1] != n:
            raise SizeMismatch(f"expected distances to {n} fitted points, got {d_new.shape[1]}")
        if self.rank_ == 0:
            return np.zeros((d_new.shape[0], 0))
        to_base = self.metric_space_.d[:, self.base] ** 2
        new_to_base = d_new[:, self.base] ** 2
        gram = (to_base[None, :] + new_to_base[:, None] - d_new**2) / 2
        coords = self.embedding_
        return gram @ coords / np.sum(coords**2, axis=0)


class GeometricFiedler(ClusterMixin, BaseEstimator):
    """Exhaustive geometric Fiedler value of a graph over a finite metric.

    ``fit`` takes an adjacency matrix (or a :class:`WeightedGraph`); edge
    weights are ignored. ``labels_`` is the minimizing map, as indices into
    the target metric. The default target is the two-point unit metric,
    for which the value is the sparsest cut with unit demands.
    """

    def __init__(self, target=None, budget=DEFAULT_BUDGET):
        self.target = target
        self.budget = budget

    def _target(self) -> MetricSpace:
        if self.target is None:
            return shortest_path_metric(WeightedGraph.unweighted(2, [(0, 1)]))
        return check_distance_matrix(self.target)

    def fit(self, X, y=None):
        g = check_graph(X)
        res = geometric_fiedler(g, self._target(), budget=self.budget)
        self.graph_ = g
        self.result_ = res
        self.value_ = res.value
        self.labels_ = np.array(res.argmin.assignment)
        self.maps_searched_ = res.maps_searched
        self.classic_lambda2_ = classic_lambda2(g)
        self.n_features_in_ = g.n
        return self
