"""Finite undirected graphs with BFS metric structure.

Vertices are 0..n-1.  Distance matrices are computed once and cached;
interval queries ([u,v] = vertices on some geodesic between u and v) are
vectorised rows of that matrix.  Graphs may carry vertex labels, which is
how Cayley balls travel into the median-geometry code.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ConfigurationError, UsageError

_UNREACHED = -1


class FiniteGraph:
    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 labels: Optional[Sequence] = None):
        if n < 1:
            raise ConfigurationError("graph needs at least one vertex")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        edge_set = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ConfigurationError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ConfigurationError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in edge_set:
                raise ConfigurationError(f"repeated edge {key}")
            edge_set.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.edges = sorted(edge_set)
        self.adjacency = [sorted(s) for s in adj]
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ConfigurationError("labels length must match vertex count")
        self._dist: Optional[np.ndarray] = None

    def __repr__(self):
        return f"<graph n={self.n} m={len(self.edges)}>"

    def distances_from(self, source: int) -> np.ndarray:
        dist = np.full(self.n, _UNREACHED, dtype=np.int32)
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for w in self.adjacency[u]:
                if dist[w] == _UNREACHED:
                    dist[w] = du
                    queue.append(w)
        return dist

    def distance_matrix(self) -> np.ndarray:
        if self._dist is None:
            self._dist = np.vstack([self.distances_from(v) for v in range(self.n)])
        return self._dist

    def is_connected(self) -> bool:
        return bool((self.distances_from(0) >= 0).all())

    def distance(self, u: int, v: int) -> int:
        d = int(self.distance_matrix()[u, v])
        if d == _UNREACHED:
            raise UsageError(f"vertices {u} and {v} are in different components")
        return d

    def interval_mask(self, u: int, v: int) -> np.ndarray:
        """Boolean mask of [u,v] = {w : d(u,w) + d(w,v) = d(u,v)}."""
        D = self.distance_matrix()
        duv = D[u, v]
        if duv == _UNREACHED:
            raise UsageError(f"vertices {u} and {v} are in different components")
        reach = (D[u] != _UNREACHED) & (D[v] != _UNREACHED)
        return reach & (D[u] + D[v] == duv)

    def interval(self, u: int, v: int) -> list[int]:
        return [int(w) for w in np.flatnonzero(self.interval_mask(u, v))]


def grid_graph(width: int, height: int) -> FiniteGraph:
    def vid(x, y):
        return y * width + x

    edges = []
    for y in range(height):
        for x in range(width):
            if x + 1 < width:
                edges.append((vid(x, y), vid(x + 1, y)))
            if y + 1 < height:
                edges.append((vid(x, y), vid(x, y + 1)))
    labels = [(x, y) for y in range(height) for x in range(width)]
    return FiniteGraph(width * height, edges, labels=labels)


def cube_graph(dim: int) -> FiniteGraph:
    n = 1 << dim
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)]
    return FiniteGraph(n, edges)


def cycle_graph(n: int) -> FiniteGraph:
    if n < 3:
        raise ConfigurationError("cycle needs at least 3 vertices")
    return FiniteGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(a: int, b: int) -> FiniteGraph:
    return FiniteGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def load_graph_file(path: str) -> FiniteGraph:
    """Same ``n m`` + edge-list format as raag defining graphs."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ConfigurationError(f"{path}: expected header 'n m'")
    try:
        n, m = int(tokens[0]), int(tokens[1])
        rest = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise ConfigurationError(f"{path}: non-integer token") from exc
    if len(rest) != 2 * m:
        raise ConfigurationError(
            f"{path}: header promises {m} edges, found {len(rest) // 2}")
    return FiniteGraph(n, [(rest[2 * i], rest[2 * i + 1]) for i in range(m)])


def named_graph(spec: str) -> FiniteGraph:
    """Built-in generators: ``grid:WxH``, ``cube:d``, ``cycle:n``, ``path:n``,
    ``k23``; anything else is treated as a file path."""
    spec = spec.strip()
    if spec == "k23":
        return complete_bipartite_graph(2, 3)
    head, _, rest = spec.partition(":")
    try:
        if head == "grid":
            w, _, h = rest.partition("x")
            return grid_graph(int(w), int(h))
        if head == "cube":
            return cube_graph(int(rest))
        if head == "cycle":
            return cycle_graph(int(rest))
        if head == "path":
            return path_graph(int(rest))
    except ValueError:
        raise ConfigurationError(f"bad graph spec {spec!r}")
    return load_graph_file(spec)
