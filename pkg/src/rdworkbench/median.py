"""Median-graph recognition and cube-complex combinatorics on finite
graphs: medians, hyperplanes (square-opposite edge classes), wall-counting
distances, separation posets, Dilworth chain covers and interval growth.

Hyperplanes are computed on the 1-skeleton: two edges are elementary
related when they are opposite sides of a 4-cycle, and hyperplanes are the
transitive closure classes.  On median graphs each class disconnects the
graph into exactly two halfspaces, and graph distance equals the number of
separating classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import MedianViolationError, UsageError
from .graphs import FiniteGraph

IS_MEDIAN_VERTEX_CAP = 5000


def triple_intersection(graph: FiniteGraph, u: int, v: int, w: int) -> list[int]:
    """[u,v] & [v,w] & [w,u] via distance rows.  A vertex lies in all three
    intervals exactly when its distance sum to u, v, w meets the perimeter
    lower bound (d(u,v) + d(v,w) + d(w,u)) / 2."""
    D = graph.distance_matrix()
    mask = (graph.interval_mask(u, v) & graph.interval_mask(v, w)
            & graph.interval_mask(w, u))
    hits = [int(x) for x in np.flatnonzero(mask)]
    # cheap consistency check against the perimeter characterisation
    perim = int(D[u, v] + D[v, w] + D[w, u])
    assert all(2 * int(D[u, x] + D[v, x] + D[w, x]) == perim for x in hits)
    return hits


def median(graph: FiniteGraph, u: int, v: int, w: int) -> int:
    hits = triple_intersection(graph, u, v, w)
    if len(hits) != 1:
        raise MedianViolationError(
            f"triple ({u},{v},{w}) has interval intersection of size "
            f"{len(hits)}, expected a single median",
            triple=(u, v, w), intersection=hits)
    return hits[0]


def is_median(graph: FiniteGraph, return_witness: bool = False):
    """Exhaustive triple check: true iff every vertex triple has a unique
    median.  With return_witness=True returns (flag, first bad triple)."""
    n = graph.n
    if n > IS_MEDIAN_VERTEX_CAP:
        raise UsageError(
            f"median recognition capped at {IS_MEDIAN_VERTEX_CAP} vertices, "
            f"got {n}")
    if not graph.is_connected():
        raise UsageError("median recognition needs a connected graph")
    D = graph.distance_matrix()
    # I_u[x, y] == True iff y lies on a geodesic from u to x
    for u in range(n):
        Iu = (D[u][None, :] + D) == D[u][:, None]
        for v in range(u, n):
            on_uv = Iu[v]
            both = Iu & (D[v][None, :] + D == D[v][:, None])
            counts = both @ on_uv.astype(np.int64)
            bad = np.flatnonzero(counts != 1)
            if bad.size:
                w = int(bad[0])
                witness = (u, v, w)
                return (False, witness) if return_witness else False
    return (True, None) if return_witness else True


@dataclass
class Hyperplane:
    id: int
    edges: list[tuple[int, int]]
    side: np.ndarray  # boolean per vertex; True = the halfspace of vertex 0's side complement

    def separates(self, u: int, v: int) -> bool:
        return bool(self.side[u] != self.side[v])


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def hyperplanes(graph: FiniteGraph) -> list[Hyperplane]:
    """Edge classes under the square-opposite relation, each verified to
    cut the graph into exactly two halfspaces."""
    if not graph.is_connected():
        raise UsageError("hyperplanes need a connected graph")
    edges = graph.edges
    edge_id = {e: i for i, e in enumerate(edges)}

    def eid(a, b):
        return edge_id[(a, b) if a < b else (b, a)]

    uf = _UnionFind(len(edges))
    adjacency_sets = [set(nbrs) for nbrs in graph.adjacency]
    for (a, b) in edges:
        for c in graph.adjacency[a]:
            if c == b:
                continue
            # squares a-b-d-c with sides (a,c), (b,d): opposite edges
            # (a,b) ~ (c,d)
            for d in adjacency_sets[b] & adjacency_sets[c]:
                if d != a:
                    uf.union(eid(a, b), eid(c, d))

    classes: dict[int, list[tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        classes.setdefault(uf.find(i), []).append(e)

    out = []
    for hid, (_, class_edges) in enumerate(sorted(classes.items())):
        removed = set(class_edges)
        side = np.full(graph.n, -1, dtype=np.int8)
        from collections import deque

        comp = 0
        for start in range(graph.n):
            if side[start] != -1:
                continue
            if comp >= 2:
                raise MedianViolationError(
                    f"hyperplane {hid} cuts the graph into more than two "
                    f"components (not a median graph)")
            side[start] = comp
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in graph.adjacency[x]:
                    e = (x, y) if x < y else (y, x)
                    if e in removed:
                        continue
                    if side[y] == -1:
                        side[y] = comp
                        queue.append(y)
            comp += 1
        if comp != 2:
            raise MedianViolationError(
                f"hyperplane {hid} fails two-sided separation "
                f"({comp} components)")
        for (a, b) in class_edges:
            if side[a] == side[b]:
                raise MedianViolationError(
                    f"hyperplane {hid} has an edge inside one halfspace")
        out.append(Hyperplane(id=hid, edges=sorted(class_edges),
                              side=side.astype(bool)))
    return out


@dataclass
class WallDistanceCheck:
    d: int
    separating: int
    equal: bool


def wall_distance_check(graph: FiniteGraph, u: int, v: int,
                        planes: Optional[list[Hyperplane]] = None) -> WallDistanceCheck:
    if planes is None:
        planes = hyperplanes(graph)
    d = graph.distance(u, v)
    separating = sum(1 for h in planes if h.separates(u, v))
    return WallDistanceCheck(d=d, separating=separating, equal=d == separating)


@dataclass
class HyperplanePoset:
    """Hyperplanes separating a fixed pair (v, w), ordered by
    h1 < h2 iff the two do not cross and h1 separates v from h2."""

    v: int
    w: int
    ground: list[Hyperplane]
    less: np.ndarray  # boolean matrix over ground indices

    def width_ground(self) -> int:
        return len(self.ground)


def _crosses(h1: Hyperplane, h2: Hyperplane) -> bool:
    # hyperplanes cross iff all four quadrant combinations are inhabited
    for s1 in (False, True):
        for s2 in (False, True):
            if not np.any((h1.side == s1) & (h2.side == s2)):
                return False
    return True


def hyperplane_poset(graph: FiniteGraph, v: int, w: int,
                     planes: Optional[list[Hyperplane]] = None) -> HyperplanePoset:
    if planes is None:
        planes = hyperplanes(graph)
    ground = [h for h in planes if h.separates(v, w)]
    k = len(ground)
    less = np.zeros((k, k), dtype=bool)
    for i, h1 in enumerate(ground):
        for j, h2 in enumerate(ground):
            if i == j or _crosses(h1, h2):
                continue
            # side of h1 containing h2 (h2's edges live in one halfspace)
            a, b = h2.edges[0]
            if h1.side[v] != h1.side[a]:
                less[i, j] = True
    # sanity: the relation must be a strict partial order on median graphs
    if np.any(less & less.T):
        raise MedianViolationError(
            f"separation relation for pair ({v},{w}) is not antisymmetric")
    closure = less.copy()
    for m in range(k):
        closure |= closure[:, m][:, None] & closure[m, :][None, :]
    if np.any(closure & ~less):
        raise MedianViolationError(
            f"separation relation for pair ({v},{w}) is not transitive")
    return HyperplanePoset(v=v, w=w, ground=ground, less=less)


@dataclass
class ChainCover:
    chains: list[list[int]]  # hyperplane ids, each chain in increasing order
    width: int
    antichain: list[int]     # certifying antichain of hyperplane ids


def _max_bipartite_matching(adj: list[list[int]], n_right: int) -> list[int]:
    """Kuhn's augmenting-path matching; returns match_right of size n_right
    with -1 for unmatched."""
    match_right = [-1] * n_right
    match_left = [-1] * len(adj)

    def try_augment(u, seen):
        for w in adj[u]:
            if seen[w]:
                continue
            seen[w] = True
            if match_right[w] == -1 or try_augment(match_right[w], seen):
                match_right[w] = u
                match_left[u] = w
                return True
        return False

    for u in range(len(adj)):
        try_augment(u, [False] * n_right)
    return match_left


def chain_cover(poset: HyperplanePoset) -> ChainCover:
    """Minimum chain cover via maximum bipartite matching on the order
    relation (Dilworth / Fulkerson); the certifying maximum antichain
    comes from the Koenig vertex cover."""
    k = len(poset.ground)
    ids = [h.id for h in poset.ground]
    less = poset.less
    adj = [list(np.flatnonzero(less[i])) for i in range(k)]
    match_left = _max_bipartite_matching(adj, k)
    match_right = [-1] * k
    for u, w in enumerate(match_left):
        if w != -1:
            match_right[w] = u

    successor = dict(enumerate(match_left))
    has_pred = {w for w in match_left if w != -1}
    chains = []
    for start in range(k):
        if start in has_pred:
            continue
        chain = [start]
        while successor[chain[-1]] != -1:
            chain.append(successor[chain[-1]])
        chains.append([ids[i] for i in chain])
    chains.sort(key=lambda c: c[0])

    # Koenig: alternating reachability from unmatched left vertices
    unmatched = [u for u in range(k) if match_left[u] == -1]
    seen_left = set(unmatched)
    seen_right = set()
    stack = list(unmatched)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen_right:
                seen_right.add(w)
                mu = match_right[w]
                if mu != -1 and mu not in seen_left:
                    seen_left.add(mu)
                    stack.append(mu)
    cover = {u for u in range(k) if u not in seen_left} | seen_right
    antichain = sorted(ids[i] for i in range(k) if i not in cover)

    width = len(chains)
    if width != len(antichain) or width + sum(
        1 for w in match_left if w != -1
    ) != k:
        raise AssertionError("Dilworth certificate mismatch")
    return ChainCover(chains=chains, width=width, antichain=antichain)


def interval_coordinates(graph: FiniteGraph, v: int, w: int,
                         cover: ChainCover, u: int,
                         planes: Optional[list[Hyperplane]] = None) -> tuple[int, ...]:
    """c_i(u) = number of hyperplanes in chain i separating u from v;
    injective over the interval [v, w]."""
    if planes is None:
        planes = hyperplanes(graph)
    if not graph.interval_mask(v, w)[u]:
        raise UsageError(f"vertex {u} is not on the interval [{v},{w}]")
    by_id = {h.id: h for h in planes}
    return tuple(
        sum(1 for hid in chain if by_id[hid].separates(v, u))
        for chain in cover.chains
    )


@dataclass
class IntervalGrowthPoint:
    r: int
    count: int
    bound: int
    within: bool


def interval_growth_check(graph: FiniteGraph, v: int, w: int, r_max: int,
                          width: Optional[int] = None) -> list[IntervalGrowthPoint]:
    """|[v,w] & B(v,r)| against the coordinate bound (r+1)^N, where N is
    the chain-cover width of the separation poset (the +1 absorbs the
    degenerate radii the asymptotic bound glosses over)."""
    if width is None:
        width = chain_cover(hyperplane_poset(graph, v, w)).width
    D = graph.distance_matrix()
    mask = graph.interval_mask(v, w)
    out = []
    for r in range(r_max + 1):
        count = int((mask & (D[v] <= r)).sum())
        bound = (r + 1) ** width if width > 0 else 1
        out.append(IntervalGrowthPoint(r=r, count=count, bound=bound,
                                       within=count <= bound))
    return out
