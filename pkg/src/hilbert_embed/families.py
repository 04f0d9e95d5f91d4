"""Named metric families and explicit non-embeddability witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameters
from .metric import MetricSpace, WeightedGraph, shortest_path_metric


# vertex order used below for the three neighbourhood configurations:
# 0 = hub v, 1 = u, 2 = z, 3 = w; u and w are the non-adjacent pair
NEIGHBOURHOOD_EDGES = {
    "a": [(0, 1), (0, 2), (0, 3)],
    "b": [(0, 1), (0, 2), (0, 3), (1, 2)],
    "c": [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
}
NEIGHBOURHOOD_LABELS = ("v", "u", "z", "w")

FAMILY_KINDS = (
    "path",
    "cycle",
    "complete",
    "claw",
    "claw-plus-edge",
    "neighbourhood",
    "pythagorean",
    "snk",
    "random",
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int | None = None
    k: int | None = None
    config: str | None = None
    z: int | None = None
    pairs: tuple = field(default=())
    dim: int = 2
    seed: int = 0

    def validate(self) -> None:
        kind = self.kind
        if kind not in FAMILY_KINDS:
            raise BadParameters(f"unknown family {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
        if kind in ("path", "cycle", "complete", "snk", "random"):
            if self.n is None or self.n < 1:
                raise BadParameters(f"{kind} needs n >= 1")
        if kind == "cycle" and self.n < 3:
            raise BadParameters("cycle needs n >= 3")
        if kind == "snk":
            if self.k is None or not (2 <= self.k <= self.n - 1):
                raise BadParameters(f"snk needs 2 <= k <= n - 1, got n={self.n}, k={self.k}")
        if kind == "neighbourhood" and self.config not in NEIGHBOURHOOD_EDGES:
            raise BadParameters("neighbourhood needs config in {a, b, c}")
        if kind == "random" and self.dim < 1:
            raise BadParameters("random needs dim >= 1")
        if kind == "pythagorean":
            _check_pythagorean(self.z, self.pairs)


def _check_pythagorean(z, pairs) -> None:
    if z is None or z < 1:
        raise BadParameters("pythagorean needs a positive integer z")
    if len(pairs) != 3:
        raise BadParameters(f"pythagorean needs exactly three (p, q) pairs, got {len(pairs)}")
    for p, q in pairs:
        if p * q != z:
            raise BadParameters(f"pair ({p}, {q}): p*q = {p * q} != z = {z}")
        if (p - q) % 2:
            raise BadParameters(f"pair ({p}, {q}): parity differs (p mod 2 != q mod 2)")
    legs = [(p * p - q * q) // 2 for p, q in pairs]
    if len(set(legs)) != 3:
        raise BadParameters("pythagorean pairs must give three distinct points")


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.unweighted(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> WeightedGraph:
    return WeightedGraph.unweighted(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.unweighted(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def neighbourhood_graph(config: str) -> WeightedGraph:
    return WeightedGraph.unweighted(4, NEIGHBOURHOOD_EDGES[config])


def pythagorean_pairs(z: int) -> list[tuple[int, int]]:
    """All factorizations ``z = p*q`` with ``p > q`` and ``p = q (mod 2)``."""
    out = []
    for q in range(1, math.isqrt(z) + 1):
        if z % q == 0:
            p = z // q
            if p > q and (p - q) % 2 == 0:
                out.append((p, q))
    out.sort(reverse=True)
    if len(out) < 3:
        raise BadParameters(f"z = {z} has only {len(out)} admissible factor pairs; need 3")
    return out


def pythagorean_points(z: int, pairs) -> np.ndarray:
    _check_pythagorean(z, pairs)
    pts = [((p * p - q * q) / 2, 0.0) for p, q in pairs]
    pts.append((0.0, float(z)))
    return np.array(pts)


def snk_points(n: int, k: int) -> tuple[np.ndarray, list]:
    """Lattice points ``(0,0)``, ``(i,0)`` for ``1 <= i < k``, ``(0,j)`` for ``1 <= j <= n-k``.

    Returned in Hamiltonian-path order: ``(k-1,0), ..., (1,0), (0,0), (0,1), ..., (0,n-k)``,
    so the corner ``(0,0)`` sits at (1-based) position ``k``.
    """
    pts = [(i, 0) for i in range(k - 1, 0, -1)] + [(0, 0)] + [(0, j) for j in range(1, n - k + 1)]
    return np.array(pts, dtype=float), [f"({x},{y})" for x, y in pts]


def random_points(n: int, dim: int, seed: int) -> np.ndarray:
    # numpy's PCG64 via default_rng: portable and stable across platforms
    return np.random.default_rng(seed).standard_normal((n, dim))


def random_euclidean(n: int, dim: int, seed: int) -> MetricSpace:
    if n < 1 or dim < 1:
        raise BadParameters("random_euclidean needs n >= 1 and dim >= 1")
    return MetricSpace.from_points(random_points(n, dim, seed))


def generate(spec: FamilySpec) -> MetricSpace:
    spec.validate()
    kind = spec.kind
    if kind == "path":
        return shortest_path_metric(path_graph(spec.n))
    if kind == "cycle":
        return shortest_path_metric(cycle_graph(spec.n))
    if kind == "complete":
        return shortest_path_metric(complete_graph(spec.n))
    if kind == "claw":
        return shortest_path_metric(neighbourhood_graph("a"), NEIGHBOURHOOD_LABELS)
    if kind == "claw-plus-edge":
        return shortest_path_metric(neighbourhood_graph("b"), NEIGHBOURHOOD_LABELS)
    if kind == "neighbourhood":
        return shortest_path_metric(neighbourhood_graph(spec.config), NEIGHBOURHOOD_LABELS)
    if kind == "pythagorean":
        pts = pythagorean_points(spec.z, spec.pairs)
        return MetricSpace.from_points(pts, ("x1", "x2", "x3", "x4"))
    if kind == "snk":
        pts, labels = snk_points(spec.n, spec.k)
        return MetricSpace.from_points(pts, labels)
    return random_euclidean(spec.n, spec.dim, spec.seed)


# --- witnesses ------------------------------------------------------------

_NEIGHBOURHOOD_ALPHA = {
    "ClawA": ("a", (-3, 1, 1, 1)),
    "ClawB": ("b", (4, -1, -1, -2)),
    "ClawC": ("c", (1, -1, 1, -1)),
}


@dataclass(frozen=True)
class Witness:
    """A zero-sum coefficient vector on named vertices of a metric."""

    metric: MetricSpace
    vertices: tuple
    alpha: tuple

    def padded(self) -> np.ndarray:
        """``alpha`` placed on the full point set, zeros elsewhere."""
        full = np.zeros(self.metric.n)
        full[list(self.vertices)] = self.alpha
        return full

    def value(self) -> float:
        a = self.padded()
        return float(a @ (self.metric.d ** 2) @ a)


def known_witness(config: str, k: int | None = None) -> Witness:
    """Explicit witness vectors for the claw configurations and long cycles.

    ``ClawA/B/C`` act on the four-point configurations in vertex order
    ``v, u, z, w`` (hub first). ``EvenCycle(k)`` lives on ``C_{2k}`` with
    vertices ``0, 2k-1, k-1, k``; ``OddCycle(k)`` on ``C_{2k+1}`` with
    ``0, 1, k, k+1``.
    """
    if config in _NEIGHBOURHOOD_ALPHA:
        cfg, alpha = _NEIGHBOURHOOD_ALPHA[config]
        m = shortest_path_metric(neighbourhood_graph(cfg), NEIGHBOURHOOD_LABELS)
        return Witness(m, (0, 1, 2, 3), alpha)
    if config not in ("EvenCycle", "OddCycle"):
        raise BadParameters(f"unknown witness configuration {config!r}")
    if k is None or k < 2:
        raise BadParameters(f"{config} needs k >= 2")
    if config == "EvenCycle":
        m = shortest_path_metric(cycle_graph(2 * k))
        return Witness(m, (0, 2 * k - 1, k - 1, k), (1, -1, -1, 1))
    m = shortest_path_metric(cycle_graph(2 * k + 1))
    return Witness(m, (0, 1, k, k + 1), (1, -1, 1, -1))
