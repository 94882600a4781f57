"""Cayley-ball enumeration, growth functions and length functions coming
from isometric actions on labelled graphs.

Balls are enumerated by BFS and then frozen in a deterministic order
(word length, then canonical-form lexicographic), so every downstream
artefact is reproducible byte for byte.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .config import element_cap
from .errors import CapacityError, UsageError
from .graphs import FiniteGraph
from .groups import GroupHandle

ABSENT = -1


class BallIndex:
    """A frozen enumeration of the ball B(R) = {g : l(g) <= R}.

    ``elements[i]`` is the i-th element in (length, canonical form) order,
    ``lengths[i]`` its word length and ``right_adjacency[i, s]`` the index
    of elements[i] * generator_s, or -1 when the product leaves the ball.
    """

    def __init__(self, group: GroupHandle, radius: int, elements: list,
                 lengths: np.ndarray):
        self.group = group
        self.radius = radius
        self.elements = elements
        self.lengths = lengths
        self.index_of = {g: i for i, g in enumerate(elements)}
        self._right_adjacency: Optional[np.ndarray] = None
        self._gamma: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<ball {self.group.spec} R={self.radius} n={len(self)}>"

    @property
    def right_adjacency(self) -> np.ndarray:
        if self._right_adjacency is None:
            G = self.group
            n, k = len(self.elements), len(G.generators)
            adj = np.full((n, k), ABSENT, dtype=np.int64)
            index_of = self.index_of
            for i, g in enumerate(self.elements):
                for j, s in enumerate(G.generators):
                    adj[i, j] = index_of.get(G.multiply(g, s), ABSENT)
            self._right_adjacency = adj
        return self._right_adjacency

    def growth(self) -> np.ndarray:
        """gamma(0..R), the cumulative ball sizes."""
        if self._gamma is None:
            counts = np.bincount(self.lengths, minlength=self.radius + 1)
            self._gamma = counts.cumsum()
        return self._gamma

    def prefix_size(self, r: int) -> int:
        """Number of elements of length <= r (a prefix of the enumeration)."""
        if r >= self.radius:
            return len(self.elements)
        if r < 0:
            return 0
        return int(self.growth()[r])

    def cayley_graph(self) -> FiniteGraph:
        """The induced (right multiplication) Cayley graph on this ball,
        vertices labelled by group elements."""
        adj = self.right_adjacency
        edges = set()
        for i in range(adj.shape[0]):
            for j in adj[i]:
                if j != ABSENT and i < j:
                    edges.add((i, int(j)))
        return FiniteGraph(len(self.elements), sorted(edges), labels=self.elements)


def enumerate_ball(group: GroupHandle, radius: int,
                   cap: Optional[int] = None) -> BallIndex:
    """Complete, duplicate-free BFS enumeration of B(radius)."""
    if radius < 0:
        raise UsageError(f"ball radius must be >= 0, got {radius}")
    cap = element_cap() if cap is None else cap
    table = {group.identity(): 0}
    frontier = [group.identity()]
    for level in range(1, radius + 1):
        new = []
        for g in frontier:
            for s in group.generators:
                h = group.multiply(g, s)
                if h not in table:
                    table[h] = level
                    new.append(h)
        if len(table) > cap:
            raise CapacityError(
                f"{group.spec}: ball of radius {level} exceeds element cap "
                f"{cap} ({len(table)} elements and growing)"
            )
        frontier = new
        if not new:
            break
    elements = sorted(table, key=lambda g: (table[g], group.sort_key(g)))
    lengths = np.fromiter((table[g] for g in elements), dtype=np.int64,
                          count=len(elements))
    return BallIndex(group, radius, elements, lengths)


def growth_function(ball: BallIndex) -> list[int]:
    """gamma(0..R) as plain ints; gamma(0) = 1 and the sequence is
    nondecreasing."""
    return [int(v) for v in ball.growth()]


class GraphAction:
    """Left-multiplication action of a group on one of its labelled Cayley
    ball graphs.  Orbit points that leave the loaded graph raise a capacity
    error rather than approximating."""

    def __init__(self, group: GroupHandle, graph: FiniteGraph):
        if graph.labels is None:
            raise UsageError("graph action needs a vertex-labelled graph")
        self.group = group
        self.graph = graph
        self._vertex_of = {g: i for i, g in enumerate(graph.labels)}

    def apply(self, g, vertex: int) -> int:
        target = self.group.multiply(g, self.graph.labels[vertex])
        try:
            return self._vertex_of[target]
        except KeyError:
            raise CapacityError(
                f"{self.group.spec}: orbit point {target!r} lies outside the "
                f"loaded graph (radius too small)"
            ) from None


def action_length(group: GroupHandle, action: GraphAction, basepoint: int,
                  g) -> int:
    """l_p(g) = d(p, g p) in the graph the action lives on."""
    moved = action.apply(g, basepoint)
    return action.graph.distance(basepoint, moved)
