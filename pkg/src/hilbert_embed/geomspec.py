"""Normalized Laplacian, geometric Fiedler values and orthogonality of maps.

A map ``f: V -> X`` from the vertices of an unweighted graph into a finite
metric space plays the role of a (harmonic) eigenvector. Its Rayleigh
quotient is

    vol(G) * sum_{u~v} d(f(u), f(v))^2 / sum_{u<v} d(f(u), f(v))^2 d_u d_v

with the denominator over unordered vertex pairs, which makes the quotient
agree with the classical one when ``X`` is the real line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameters,
    BudgetExceeded,
    ConstantMap,
    Disconnected,
    GraphMismatch,
    IsolatedVertex,
    SizeMismatch,
    TargetMismatch,
    TargetTooSmall,
)
from .metric import MetricSpace, WeightedGraph, shortest_path_matrix
from .symmat import jacobi_eigen

DEFAULT_BUDGET = 10**7
_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class HarmonicMap:
    graph: WeightedGraph
    target: MetricSpace
    assignment: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.assignment)
        if len(a) != self.graph.n:
            raise SizeMismatch(f"assignment has {len(a)} entries for {self.graph.n} vertices")
        if any(not 0 <= x < self.target.n for x in a):
            raise BadParameters(f"assignment values must lie in 0..{self.target.n - 1}")
        object.__setattr__(self, "assignment", a)

    @property
    def is_constant(self) -> bool:
        return len(set(self.assignment)) <= 1

    def values(self) -> list:
        return [self.target.labels[i] for i in self.assignment]


@dataclass(frozen=True)
class GeometricFiedlerResult:
    value: float
    argmin: HarmonicMap
    maps_searched: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "argmin": list(self.argmin.assignment),
            "maps_searched": self.maps_searched,
        }


def _degrees(g: WeightedGraph) -> np.ndarray:
    return g.adjacency().sum(axis=1).astype(float)


def _check_connected(g: WeightedGraph) -> None:
    if g.n == 0:
        raise BadParameters("graph has no vertices")
    d = shortest_path_matrix(g)
    bad = np.flatnonzero(~np.isfinite(d[0]))
    if bad.size:
        raise Disconnected(int(bad[0]))


def normalized_laplacian(g: WeightedGraph) -> np.ndarray:
    """``I - T^{-1/2} A T^{-1/2}`` for the unweighted structure of ``g``."""
    deg = _degrees(g)
    if g.n == 0 or np.any(deg == 0):
        v = int(np.flatnonzero(deg == 0)[0]) if g.n else 0
        raise IsolatedVertex(f"vertex {v} has degree 0")
    inv_sqrt = 1.0 / np.sqrt(deg)
    lap = np.eye(g.n) - inv_sqrt[:, None] * g.adjacency() * inv_sqrt[None, :]
    return (lap + lap.T) / 2


def laplacian_spectrum(g: WeightedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and harmonic eigenvectors ``T^{-1/2} x`` as columns."""
    _check_connected(g)
    eig = jacobi_eigen(normalized_laplacian(g))
    harmonic = eig.eigenvectors / np.sqrt(_degrees(g))[:, None]
    return eig.eigenvalues, harmonic


def classic_lambda2(g: WeightedGraph) -> float:
    _check_connected(g)
    if g.n < 2:
        raise BadParameters("lambda_2 needs at least two vertices")
    return float(jacobi_eigen(normalized_laplacian(g)).eigenvalues[1])


def geometric_rayleigh(h: HarmonicMap) -> float:
    g = h.graph
    deg = _degrees(g)
    vol = deg.sum()
    sq = h.target.d ** 2
    f = np.array(h.assignment)
    num = sum(sq[f[u], f[v]] for u, v, _ in g.edges)
    den = 0.0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            den += sq[f[u], f[v]] * deg[u] * deg[v]
    if den == 0.0:
        raise ConstantMap("the quotient is undefined for a constant map")
    return float(vol * num / den)


def geometric_fiedler(
    g: WeightedGraph, x: MetricSpace, budget: int = DEFAULT_BUDGET, chunk: int = 1 << 16
) -> GeometricFiedlerResult:
    """Exact minimum of the geometric Rayleigh quotient by exhaustive search.

    Assignments are visited in lexicographic order and constant maps are
    skipped. Among (near-)ties within a relative ``1e-12`` the first map
    visited is reported.
    """
    m, n = x.n, g.n
    if m < 2:
        raise TargetTooSmall("target metric needs at least two points")
    _check_connected(g)
    deg = _degrees(g)
    if np.any(deg == 0):
        raise IsolatedVertex("geometric Fiedler value needs every vertex to have an edge")
    total = m**n
    if total > budget:
        raise BudgetExceeded(f"{m}^{n} = {total} assignments exceed the budget {budget}")
    sq = x.d ** 2
    vol = deg.sum()
    eu = np.array([u for u, _, _ in g.edges], dtype=np.intp)
    ev = np.array([v for _, v, _ in g.edges], dtype=np.intp)
    pu, pv = np.triu_indices(n, 1)
    pair_w = deg[pu] * deg[pv]
    place = m ** np.arange(n - 1, -1, -1, dtype=np.int64)

    best_val, best_idx = np.inf, -1
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        f = (idx[:, None] // place[None, :]) % m
        num = vol * sq[f[:, eu], f[:, ev]].sum(axis=1)
        den = (sq[f[:, pu], f[:, pv]] * pair_w).sum(axis=1)
        ok = den > 0
        if not ok.any():
            continue
        q = np.full(len(idx), np.inf)
        q[ok] = num[ok] / den[ok]
        cmin = q.min()
        if cmin < best_val * (1 - _TIE_RTOL):
            best_idx = int(idx[np.flatnonzero(q <= cmin * (1 + _TIE_RTOL))[0]])
            best_val = float(cmin)
        elif cmin < best_val:
            best_val = float(cmin)
    assignment = tuple(int(d) for d in (best_idx // place) % m)
    return GeometricFiedlerResult(best_val, HarmonicMap(g, x, assignment), total - m)


def sparsest_cut_oracle(g: WeightedGraph, budget: int = DEFAULT_BUDGET) -> float:
    """``min_S vol(G) |E(S, S^c)| / (vol(S) vol(S^c))`` over proper vertex subsets."""
    _check_connected(g)
    n = g.n
    if n < 2:
        raise BadParameters("sparsest cut needs at least two vertices")
    if 2**n > budget:
        raise BudgetExceeded(f"2^{n} subsets exceed the budget {budget}")
    deg = [0] * n
    for u, v, _ in g.edges:
        deg[u] += 1
        deg[v] += 1
    vol = sum(deg)
    best = float("inf")
    # vertex n-1 stays outside S, each cut is seen once
    for mask in range(1, 1 << (n - 1)):
        vol_s = sum(deg[i] for i in range(n) if mask >> i & 1)
        cut = sum(1 for u, v, _ in g.edges if (mask >> u & 1) != (mask >> v & 1))
        best = min(best, vol * cut / (vol_s * (vol - vol_s)))
    return best


def orthogonality_defect(f1: HarmonicMap, f2: HarmonicMap) -> float:
    """Zero exactly when the two maps are orthogonal in the embedding sense.

    ``sum_{u,v} d_u d_v / (2 vol) d(f1(v), f2(u))^2 - sum_v d_v / 2 d(f1(v), f2(v))^2``,
    the first sum over ordered pairs including ``u == v``. Over the real line
    this reduces to the degree-weighted covariance of ``f1`` and ``f2``.
    """
    if f1.graph != f2.graph:
        raise GraphMismatch("maps are defined on different graphs")
    if f1.target != f2.target:
        raise TargetMismatch("maps take values in different metric spaces")
    deg = _degrees(f1.graph)
    vol = deg.sum()
    sq = f1.target.d ** 2
    a = np.array(f1.assignment)
    b = np.array(f2.assignment)
    cross = sq[np.ix_(a, b)]  # cross[v, u] = d(f1(v), f2(u))^2
    first = float(deg @ cross @ deg) / (2 * vol)
    second = float(np.sum(deg * sq[a, b])) / 2
    return first - second


def real_valued_maps(g: WeightedGraph, *values) -> list[HarmonicMap]:
    """Wrap real-valued vertex functions as maps into one finite subset of the line."""
    vecs = [np.asarray(v, dtype=float) for v in values]
    for v in vecs:
        if v.shape != (g.n,):
            raise SizeMismatch(f"expected {g.n} values per map, got shape {v.shape}")
    points = sorted(set(itertools.chain.from_iterable(v.tolist() for v in vecs)))
    target = MetricSpace.from_points(np.array(points), labels=points)
    where = {p: i for i, p in enumerate(points)}
    return [HarmonicMap(g, target, tuple(where[x] for x in v.tolist())) for v in vecs]
