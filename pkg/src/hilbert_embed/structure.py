"""Structural classifiers for critical graphs and exhaustive theorem checks.

Graphs here are treated as unweighted: only the edge set of a
:class:`WeightedGraph` matters.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BadParameters, BudgetExceeded, Disconnected, WrongSize
from .metric import DEFAULT_TOL, MetricSpace, WeightedGraph, critical_graph
from .symmat import batched_jacobi_eigenvalues

logger = logging.getLogger(__name__)

MAX_ENUMERATION_N = 7


class Tag(str, enum.Enum):
    PATH = "Path"
    COMPLETE = "Complete"
    CYCLE = "Cycle"
    FOUR_POINT_PATH = "FourPointPath"
    K4 = "K4"
    K4_MINUS_E = "K4MinusE"
    CLAW = "Claw"
    CLAW_PLUS_EDGE = "ClawPlusEdge"
    C4 = "C4"
    OTHER = "Other"


@dataclass(frozen=True)
class StructureClass:
    """A tag plus a certificate: a vertex order (paths, cycles) or missing edges."""

    tag: Tag
    certificate: tuple = ()

    def check(self, g: WeightedGraph) -> bool:
        """Re-verify the certificate against ``g``'s edge set."""
        edges = g.edge_set()
        if self.tag in (Tag.PATH, Tag.FOUR_POINT_PATH):
            order = self.certificate
            want = {tuple(sorted(p)) for p in zip(order, order[1:])}
            return sorted(order) == list(range(g.n)) and want == set(edges)
        if self.tag in (Tag.CYCLE, Tag.C4):
            order = self.certificate
            want = {tuple(sorted(p)) for p in zip(order, order[1:] + order[:1])}
            return sorted(order) == list(range(g.n)) and want == set(edges)
        if self.tag in (Tag.COMPLETE, Tag.K4, Tag.K4_MINUS_E):
            all_pairs = set(itertools.combinations(range(g.n), 2))
            return all_pairs - set(edges) == set(self.certificate)
        return True


@dataclass(frozen=True)
class ConnectivityReport:
    is_path: bool
    is_2_connected: bool
    is_3_connected: bool
    articulation_points: tuple = ()
    # (u, v, adjacent) for every pair whose removal disconnects the rest
    two_cuts: tuple = ()

    @property
    def two_cuts_adjacent(self) -> bool:
        return all(adj for _, _, adj in self.two_cuts)


@dataclass(frozen=True)
class PivotDecomposition:
    order: tuple  # v_1 .. v_n
    k: int  # 1-based position of the pivot

    @property
    def pivot(self) -> int:
        return self.order[self.k - 1]

    def expected_edges(self) -> set:
        n = len(self.order)
        out = set()
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if j - i == 1 or i < self.k < j:
                    a, b = self.order[i - 1], self.order[j - 1]
                    out.add((min(a, b), max(a, b)))
        return out

    def check(self, g: WeightedGraph) -> bool:
        return (
            sorted(self.order) == list(range(g.n))
            and 2 <= self.k <= g.n - 1
            and self.expected_edges() == set(g.edge_set())
        )


# --- basic graph helpers ---------------------------------------------------


def _adjacency_sets(g: WeightedGraph) -> list[set]:
    nbrs = [set() for _ in range(g.n)]
    for u, v, _ in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    return nbrs


def _connected(nbrs, vertices) -> bool:
    vertices = set(vertices)
    if len(vertices) <= 1:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if y in vertices and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == vertices


def _require_connected(g: WeightedGraph, nbrs) -> None:
    if g.n == 0:
        raise BadParameters("graph has no vertices")
    if not _connected(nbrs, range(g.n)):
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in nbrs[x] - seen:
                seen.add(y)
                stack.append(y)
        raise Disconnected(min(set(range(g.n)) - seen))


def _path_order(nbrs, vertices) -> list | None:
    """Vertex order if the induced subgraph on ``vertices`` is a path."""
    vertices = set(vertices)
    if not vertices:
        return None
    sub = {v: nbrs[v] & vertices for v in vertices}
    if sum(len(s) for s in sub.values()) != 2 * (len(vertices) - 1):
        return None
    if any(len(s) > 2 for s in sub.values()):
        return None
    ends = sorted(v for v, s in sub.items() if len(s) <= 1)
    order = [ends[0]]
    prev = None
    while len(order) < len(vertices):
        nxt = [y for y in sub[order[-1]] if y != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return order


def is_path_graph(g: WeightedGraph) -> bool:
    return _path_order(_adjacency_sets(g), range(g.n)) is not None


def is_complete_graph(g: WeightedGraph) -> bool:
    return len(g.edges) == g.n * (g.n - 1) // 2


# --- classifiers -----------------------------------------------------------


def classify_unweighted(g: WeightedGraph) -> StructureClass:
    """Path, Complete, Cycle or Other, with a vertex order for paths and cycles.

    ``K1`` and ``K2`` are reported as paths, ``K3`` as complete.
    """
    nbrs = _adjacency_sets(g)
    _require_connected(g, nbrs)
    order = _path_order(nbrs, range(g.n))
    if order is not None:
        return StructureClass(Tag.PATH, tuple(order))
    if is_complete_graph(g):
        return StructureClass(Tag.COMPLETE, ())
    if all(len(s) == 2 for s in nbrs) and len(g.edges) == g.n:
        order = [0]
        prev = None
        while len(order) < g.n:
            nxt = min(y for y in nbrs[order[-1]] if y != prev)
            prev = order[-1]
            order.append(nxt)
        return StructureClass(Tag.CYCLE, tuple(order))
    return StructureClass(Tag.OTHER, ())


_FOUR_POINT_TAGS = {
    (3, (1, 1, 2, 2)): Tag.FOUR_POINT_PATH,
    (3, (1, 1, 1, 3)): Tag.CLAW,
    (4, (2, 2, 2, 2)): Tag.C4,
    (4, (1, 2, 2, 3)): Tag.CLAW_PLUS_EDGE,
    (5, (2, 2, 3, 3)): Tag.K4_MINUS_E,
    (6, (3, 3, 3, 3)): Tag.K4,
}


def classify_graph_4(g: WeightedGraph) -> StructureClass:
    """Tag a 4-vertex graph by edge count and degree sequence."""
    if g.n != 4:
        raise WrongSize(f"expected 4 vertices, got {g.n}")
    degs = tuple(sorted(int(x) for x in g.degrees()))
    tag = _FOUR_POINT_TAGS.get((len(g.edges), degs), Tag.OTHER)
    nbrs = _adjacency_sets(g)
    if tag is Tag.FOUR_POINT_PATH:
        cert = tuple(_path_order(nbrs, range(4)))
    elif tag is Tag.C4:
        cert = tuple(classify_unweighted(g).certificate)
    elif tag in (Tag.K4, Tag.K4_MINUS_E):
        cert = tuple(sorted(set(itertools.combinations(range(4), 2)) - set(g.edge_set())))
    elif tag in (Tag.CLAW, Tag.CLAW_PLUS_EDGE):
        # hub first
        cert = (int(np.argmax(g.degrees())),)
    else:
        cert = ()
    return StructureClass(tag, cert)


def classify_4point(m: MetricSpace, tol: float | None = None) -> StructureClass:
    if m.n != 4:
        raise WrongSize(f"expected a 4-point metric, got {m.n} points")
    return classify_graph_4(critical_graph(m, tol))


def articulation_points(g: WeightedGraph) -> list[int]:
    """Cut vertices by iterative depth-first search with low-links."""
    nbrs = [sorted(s) for s in _adjacency_sets(g)]
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(nbrs[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(nbrs[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return sorted(cut)


def connectivity_report(g: WeightedGraph) -> ConnectivityReport:
    """Path test, 2- and 3-connectivity, and every disconnecting vertex pair.

    A graph is 2-connected when it has at least 3 vertices and no cut vertex,
    3-connected when it has at least 4 vertices and no 2-cut.
    """
    nbrs = _adjacency_sets(g)
    _require_connected(g, nbrs)
    is_path = _path_order(nbrs, range(g.n)) is not None
    cuts = articulation_points(g)
    two_conn = g.n >= 3 and not cuts
    edges = g.edge_set()
    two_cuts = []
    for u, v in itertools.combinations(range(g.n), 2):
        rest = set(range(g.n)) - {u, v}
        if not _connected(nbrs, rest):
            two_cuts.append((u, v, (u, v) in edges))
    three_conn = two_conn and g.n >= 4 and not two_cuts
    return ConnectivityReport(is_path, two_conn, three_conn, tuple(cuts), tuple(two_cuts))


def _co_components(nbrs, vertices) -> list[list[int]]:
    """Connected components of the complement of the induced subgraph."""
    remaining = set(vertices)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        remaining.discard(start)
        while stack:
            x = stack.pop()
            non_nbrs = {y for y in remaining if y not in nbrs[x]}
            remaining -= non_nbrs
            comp |= non_nbrs
            stack.extend(non_nbrs)
        comps.append(sorted(comp))
    return comps


def match_pivot_structure(g: WeightedGraph) -> PivotDecomposition | None:
    """Find a Hamiltonian order ``v_1..v_n`` and pivot ``k`` with
    ``v_i ~ v_j`` iff ``|i - j| = 1`` or ``i < k < j``.

    Pivots are degree-2 vertices. With the pivot removed, each side of the
    order is a union of co-components, so every 2-partition of the
    co-components is tried; both sides must induce paths ending at the
    pivot's two neighbours. The result is re-checked against the full edge
    set before it is returned.
    """
    if g.n < 3:
        return None
    nbrs = _adjacency_sets(g)
    if not _connected(nbrs, range(g.n)):
        return None
    for pivot in range(g.n):
        if len(nbrs[pivot]) != 2:
            continue
        rest = [v for v in range(g.n) if v != pivot]
        comps = _co_components(nbrs, rest)
        if len(comps) < 2:
            continue
        # fix comps[0] on side A to skip mirror images
        for r in range(0, len(comps) - 1):
            for extra in itertools.combinations(range(1, len(comps)), r):
                side_a = set(comps[0]).union(*(comps[i] for i in extra))
                side_b = set(rest) - side_a
                found = _orient(nbrs, pivot, side_a, side_b)
                if found is not None and found.check(g):
                    return found
    return None


def _orient(nbrs, pivot, side_a, side_b) -> PivotDecomposition | None:
    path_a = _path_order(nbrs, side_a)
    path_b = _path_order(nbrs, side_b)
    if path_a is None or path_b is None:
        return None
    pa = nbrs[pivot] & side_a
    pb = nbrs[pivot] & side_b
    if len(pa) != 1 or len(pb) != 1:
        return None
    (a,) = pa
    (b,) = pb
    if path_a[-1] != a:
        path_a.reverse()
    if path_b[0] != b:
        path_b.reverse()
    if path_a[-1] != a or path_b[0] != b:
        return None
    order = tuple(path_a) + (pivot,) + tuple(path_b)
    return PivotDecomposition(order, len(path_a) + 1)


def incomplete_branch_vertex(g: WeightedGraph) -> int | None:
    """A vertex of degree > 2 whose closed neighbourhood is not a clique, if any."""
    nbrs = _adjacency_sets(g)
    for v in range(g.n):
        if len(nbrs[v]) > 2:
            for a, b in itertools.combinations(sorted(nbrs[v]), 2):
                if b not in nbrs[a]:
                    return v
    return None


# --- exhaustive enumeration ------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    n: int
    mask: int
    edges: tuple
    embeddable: bool
    lambda_max: float
    is_path: bool
    is_complete: bool

    def graph(self) -> WeightedGraph:
        return WeightedGraph.unweighted(self.n, self.edges)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mask": self.mask,
            "edges": [list(e) for e in self.edges],
            "embeddable": self.embeddable,
            "lambda_max": self.lambda_max,
            "is_path": self.is_path,
            "is_complete": self.is_complete,
        }


@dataclass
class ScanResult:
    """Per-graph arrays for all connected graphs on ``n`` labelled vertices."""

    n: int
    masks: np.ndarray
    embeddable: np.ndarray
    lambda_max: np.ndarray
    is_path: np.ndarray
    is_complete: np.ndarray
    total_masks: int = 0

    def graph(self, i: int) -> WeightedGraph:
        return graph_from_mask(self.n, int(self.masks[i]))


def vertex_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def graph_from_mask(n: int, mask: int) -> WeightedGraph:
    """Bit ``b`` of ``mask`` selects the ``b``-th pair in lexicographic order."""
    pairs = vertex_pairs(n)
    return WeightedGraph.unweighted(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


def _bfs_distances(adj: np.ndarray) -> np.ndarray:
    """Hop distances for a stack of adjacency matrices; ``inf`` if unreachable."""
    b, n, _ = adj.shape
    a = adj.astype(np.float32)
    reach = np.broadcast_to(np.eye(n, dtype=bool), (b, n, n)).copy()
    dist = np.where(reach, 0.0, np.inf)
    for step in range(1, n):
        new = reach | (np.matmul(reach.astype(np.float32), a) > 0)
        fresh = new & ~reach
        if not fresh.any():
            break
        dist[fresh] = step
        reach = new
    return dist


def scan_connected_graphs(
    n: int, tol: float = DEFAULT_TOL, chunk: int = 1 << 15
) -> ScanResult:
    """Spectral verdict for every connected graph on ``n`` labelled vertices."""
    pairs = vertex_pairs(n)
    p = len(pairs)
    total = 1 << p
    rows = np.array([i for i, _ in pairs], dtype=np.intp)
    cols = np.array([j for _, j in pairs], dtype=np.intp)
    out = {k: [] for k in ("masks", "embeddable", "lambda_max", "is_path", "is_complete")}
    bit_idx = np.arange(p, dtype=np.uint64)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = ((masks[:, None] >> bit_idx) & np.uint64(1)).astype(bool)
        adj = np.zeros((len(masks), n, n), dtype=bool)
        adj[:, rows, cols] = bits
        adj[:, cols, rows] = bits
        dist = _bfs_distances(adj)
        connected = np.isfinite(dist).all(axis=(1, 2))
        if not connected.any():
            continue
        masks, adj, dist, bits = masks[connected], adj[connected], dist[connected], bits[connected]
        sq = dist * dist
        centered = sq - sq.mean(axis=1, keepdims=True) - sq.mean(axis=2, keepdims=True)
        centered += sq.mean(axis=(1, 2))[:, None, None]
        if n == 1:
            eig = np.zeros((len(masks), 1))
        else:
            eig = batched_jacobi_eigenvalues(centered)
        lam = eig[:, -1]
        thr = tol * np.maximum(1.0, np.abs(eig).max(axis=1))
        n_edges = bits.sum(axis=1)
        max_deg = adj.sum(axis=2).max(axis=1) if n > 0 else np.zeros(len(masks))
        out["masks"].append(masks)
        out["embeddable"].append(lam <= thr)
        out["lambda_max"].append(lam)
        out["is_path"].append((n_edges == n - 1) & (max_deg <= 2))
        out["is_complete"].append(n_edges == p)
    arrays = {
        k: (np.concatenate(v) if v else np.array([], dtype=float)) for k, v in out.items()
    }
    return ScanResult(n=n, total_masks=total, **arrays)


def verify_unweighted_theorem(
    max_n: int,
    tol: float = DEFAULT_TOL,
    progress: Callable[[int, ScanResult], None] | None = None,
    stats: dict | None = None,
) -> list[Counterexample]:
    """Check "embeddable iff path or complete" on every connected unit-weight graph.

    Enumerates all adjacency bitmasks for ``1 <= n <= max_n`` (no isomorphism
    reduction). Returns the graphs where the spectral verdict disagrees with
    the path/complete test, sorted by ``(n, mask)``; the expected result is
    empty. ``stats``, if given, is filled with per-``n`` counts.
    """
    if max_n > MAX_ENUMERATION_N:
        raise BudgetExceeded(f"max_n = {max_n} exceeds the enumeration budget ({MAX_ENUMERATION_N})")
    if max_n < 1:
        raise BadParameters("max_n must be at least 1")
    found = []
    for n in range(1, max_n + 1):
        scan = scan_connected_graphs(n, tol)
        bad = np.flatnonzero(scan.embeddable != (scan.is_path | scan.is_complete))
        for i in bad:
            g = scan.graph(int(i))
            found.append(
                Counterexample(
                    n=n,
                    mask=int(scan.masks[i]),
                    edges=tuple((u, v) for u, v, _ in g.edges),
                    embeddable=bool(scan.embeddable[i]),
                    lambda_max=float(scan.lambda_max[i]),
                    is_path=bool(scan.is_path[i]),
                    is_complete=bool(scan.is_complete[i]),
                )
            )
        if stats is not None:
            stats[n] = {
                "masks": scan.total_masks,
                "connected": int(len(scan.masks)),
                "embeddable": int(scan.embeddable.sum()),
                "counterexamples": int(len(bad)),
            }
        if progress is not None:
            progress(n, scan)
        logger.info("n=%d: %d connected graphs, %d counterexamples", n, len(scan.masks), len(bad))
    found.sort(key=lambda c: (c.n, c.mask))
    return found
