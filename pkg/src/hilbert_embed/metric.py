"""Finite metric spaces, weighted graphs, shortest paths and critical graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricMatrix,
    DisconnectedGraph,
    NegativeDistance,
    NonFiniteEntry,
    NonzeroDiagonal,
    SizeMismatch,
    TriangleViolation,
    BadParameters,
)

DEFAULT_TOL = 1e-9


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """``n`` labelled points with a distance matrix.

    The constructor only checks shape; use :func:`validate_metric` to build a
    space from untrusted data.
    """

    labels: tuple
    d: np.ndarray

    def __post_init__(self):
        d = _frozen(self.d)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise SizeMismatch(f"distance matrix must be square, got shape {d.shape}")
        labels = tuple(self.labels)
        if len(labels) != d.shape[0]:
            raise SizeMismatch(f"{len(labels)} labels for {d.shape[0]} points")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, MetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.d, other.d)

    def __hash__(self):
        return hash((self.labels, self.d.tobytes()))

    def submetric(self, indices: Sequence[int]) -> MetricSpace:
        idx = list(indices)
        return MetricSpace(tuple(self.labels[i] for i in idx), self.d[np.ix_(idx, idx)])

    @classmethod
    def from_points(cls, points, labels=None) -> MetricSpace:
        """Euclidean metric of the rows of ``points``."""
        x = np.asarray(points, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        diff = x[:, None, :] - x[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        if labels is None:
            labels = range(len(x))
        return cls(tuple(labels), d)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "d": self.d.tolist()}

    @classmethod
    def from_json(cls, obj, tol=DEFAULT_TOL) -> MetricSpace:
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        d = obj["d"]
        labels = obj.get("labels")
        return validate_metric(d, tol=tol, labels=labels)


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on vertices ``0..n-1`` with positive edge weights.

    Edges are stored normalized as ``(u, v, w)`` with ``u < v``, sorted.
    """

    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise BadParameters("vertex count must be non-negative")
        norm = {}
        for e in self.edges:
            if len(e) == 2:
                u, v, w = e[0], e[1], 1.0
            else:
                u, v, w = e
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise BadParameters(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise BadParameters(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            if not w > 0 or not np.isfinite(w):
                raise BadParameters(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (min(u, v), max(u, v))
            if key in norm:
                raise BadParameters(f"duplicate edge {key}")
            norm[key] = w
        object.__setattr__(
            self, "edges", tuple((u, v, w) for (u, v), w in sorted(norm.items()))
        )

    @classmethod
    def from_adjacency(cls, adj) -> WeightedGraph:
        """Build from a square matrix; nonzero entries become edge weights."""
        a = np.asarray(adj, dtype=float)
        n = a.shape[0]
        iu, ju = np.nonzero(np.triu(a, 1))
        return cls(n, tuple((int(i), int(j), float(a[i, j])) for i, j in zip(iu, ju)))

    @classmethod
    def unweighted(cls, n: int, pairs: Iterable) -> WeightedGraph:
        return cls(n, tuple((u, v, 1.0) for u, v in pairs))

    def edge_set(self) -> frozenset:
        return frozenset((u, v) for u, v, _ in self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v, _ in self.edges:
            a[u, v] = a[v, u] = True
        return a

    def weight_matrix(self) -> np.ndarray:
        """Weights on edges, ``inf`` elsewhere, zero diagonal."""
        w = np.full((self.n, self.n), np.inf)
        np.fill_diagonal(w, 0.0)
        for u, v, x in self.edges:
            w[u, v] = w[v, u] = x
        return w

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1)

    def neighbors(self, v: int) -> list:
        return [int(u) for u in np.flatnonzero(self.adjacency()[v])]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set()

    def without_edge(self, u: int, v: int) -> WeightedGraph:
        key = (min(u, v), max(u, v))
        return WeightedGraph(self.n, tuple(e for e in self.edges if e[:2] != key))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v, w] for u, v, w in self.edges]}

    @classmethod
    def from_json(cls, obj) -> WeightedGraph:
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        return cls(int(obj["n"]), tuple(tuple(e) for e in obj["edges"]))


class CriticalGraph(WeightedGraph):
    """Minimal graph generating a metric; edge weights equal the distances."""


def validate_metric(d, tol: float = DEFAULT_TOL, labels=None) -> MetricSpace:
    """Check the metric axioms and return a :class:`MetricSpace`.

    ``tol`` is an absolute slack on symmetry, the diagonal and the triangle
    inequality. Distinct points must be at strictly positive distance.
    """
    a = np.asarray(d, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise SizeMismatch(f"distance matrix must be square and non-empty, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteEntry("distance matrix has non-finite entries")
    n = a.shape[0]
    diag = np.abs(np.diag(a))
    if np.any(diag > tol):
        i = int(np.argmax(diag))
        raise NonzeroDiagonal(f"d[{i}][{i}] = {a[i, i]:.6g}")
    asym = np.abs(a - a.T)
    if np.any(asym > tol):
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise AsymmetricMatrix(f"d[{i}][{j}] = {a[i, j]:.6g} but d[{j}][{i}] = {a[j, i]:.6g}")
    off = a + np.eye(n)  # keep the diagonal out of the positivity check
    if np.any(off <= 0):
        i, j = np.argwhere(off <= 0)[0]
        raise NegativeDistance(f"d[{i}][{j}] = {a[i, j]:.6g} must be positive")
    # excess[i, j, k] = d[i][j] - d[i][k] - d[k][j]
    excess = a[:, :, None] - a[:, None, :] - a.T[None, :, :]
    if excess.size and excess.max() > tol:
        i, j, k = (int(x) for x in np.unravel_index(np.argmax(excess), excess.shape))
        raise TriangleViolation(i, j, k, float(excess[i, j, k]))
    a = (a + a.T) / 2
    np.fill_diagonal(a, 0.0)
    if labels is None:
        labels = range(n)
    return MetricSpace(tuple(labels), a)


def shortest_path_matrix(g: WeightedGraph) -> np.ndarray:
    """All-pairs shortest path lengths (Floyd-Warshall); ``inf`` if unreachable."""
    d = g.weight_matrix()
    for k in range(g.n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def shortest_path_metric(g: WeightedGraph, labels=None) -> MetricSpace:
    if g.n < 1:
        raise BadParameters("graph has no vertices")
    d = shortest_path_matrix(g)
    unreachable = np.flatnonzero(~np.isfinite(d[0]))
    if unreachable.size:
        raise DisconnectedGraph(int(unreachable[0]))
    if labels is None:
        labels = range(g.n)
    return MetricSpace(tuple(labels), d)


def default_edge_tol(m: MetricSpace) -> float:
    return DEFAULT_TOL * float(m.d.max(initial=0.0))


def critical_graph(m: MetricSpace, tol: float | None = None) -> CriticalGraph:
    """Keep ``{u, v}`` iff no third point lies (within ``tol``) between them.

    The edge is dropped as soon as ``d(u,v) >= d(u,z) + d(z,v) - tol`` for
    some ``z``. ``tol`` defaults to ``1e-9 * max distance``.
    """
    if tol is None:
        tol = default_edge_tol(m)
    d = m.d
    n = m.n
    # via[u, v, z] = d(u,z) + d(z,v)
    via = (d[:, :, None] + d[None, :, :]).transpose(0, 2, 1).copy()
    idx = np.arange(n)
    via[idx, :, idx] = np.inf
    via[:, idx, idx] = np.inf
    best = via.min(axis=2)
    keep = d < best - tol
    edges = [(i, j, float(d[i, j])) for i in range(n) for j in range(i + 1, n) if keep[i, j]]
    return CriticalGraph(n, tuple(edges))


def generates_metric(g: WeightedGraph, m: MetricSpace, tol: float = DEFAULT_TOL) -> bool:
    if g.n != m.n:
        raise SizeMismatch(f"graph has {g.n} vertices, metric has {m.n} points")
    d = shortest_path_matrix(g)
    if not np.all(np.isfinite(d)):
        return False
    return bool(np.all(np.abs(d - m.d) <= tol))


def to_dot(g: WeightedGraph, labels: Sequence | None = None, name: str = "G") -> str:
    """Graphviz DOT text with weight labels formatted ``%.6g``."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lab = str(labels[v]) if labels is not None else str(v)
        lines.append(f'  {v} [label="{lab}"];')
    for u, v, w in g.edges:
        lines.append(f'  {u} -- {v} [label="{w:.6g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
