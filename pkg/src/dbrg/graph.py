"""Graph representation, edge-list I/O and BFS-derived structure.

Vertices are dense integers ``0..n-1``.  Everything in this module works in
exact integer arithmetic; the spectral side lives in :mod:`dbrg.spectral`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import Disconnected, LoopEdge, MalformedLine, NotBipartite, NotSemiregular


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph.

    Build with :meth:`from_edges`, which normalizes and validates the edge
    list; the constructor itself trusts its input.
    """

    n: int
    edges: tuple

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise LoopEdge(f"loop at vertex {u}", vertex=u)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            seen.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(seen)))

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> tuple:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(x)) for x in adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1)
        d.setflags(write=False)
        return d

    @cached_property
    def connected(self) -> bool:
        if self.n == 0:
            return False
        ncomp, _ = connected_components(csr_matrix(self.adjacency), directed=False)
        return ncomp == 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_regular(self) -> bool:
        return self.n > 0 and int(self.degrees.min()) == int(self.degrees.max())

    def require_connected(self) -> None:
        if not self.connected:
            raise Disconnected("graph is not connected", n=self.n)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def parse_edge_list(text: str) -> Graph:
    """Parse ``"u v"`` lines into a connected :class:`Graph`.

    Blank lines and ``#`` comments are ignored, duplicate edges collapse, and
    ``n`` is one more than the largest vertex id seen.  Unused ids in between
    become isolated vertices and therefore trip :class:`Disconnected`.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected 'u v', got {raw!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: vertex ids must be integers: {raw!r}",
                                line=lineno) from None
        if u < 0 or v < 0:
            raise MalformedLine(f"line {lineno}: negative vertex id: {raw!r}", line=lineno)
        if u == v:
            raise LoopEdge(f"line {lineno}: loop at vertex {u}", line=lineno, vertex=u)
        edges.append((u, v))
    if not edges:
        raise MalformedLine("edge list contains no edges", line=0)
    n = 1 + max(max(e) for e in edges)
    g = Graph.from_edges(n, edges)
    g.require_connected()
    return g


def format_edge_list(g: Graph, header: Optional[str] = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class DistanceData:
    """All-pairs hop distances of a connected graph."""

    distance: np.ndarray
    ecc: np.ndarray
    diameter: int

    @property
    def n(self) -> int:
        return self.distance.shape[0]

    def sphere(self, u: int, i: int) -> np.ndarray:
        return np.flatnonzero(self.distance[u] == i)

    def ball(self, u: int, k: int) -> np.ndarray:
        return np.flatnonzero(self.distance[u] <= k)

    def sphere_sizes(self, u: int) -> np.ndarray:
        return np.bincount(self.distance[u], minlength=self.diameter + 1)

    def distance_matrix(self, i: int) -> np.ndarray:
        """The 0/1 matrix ``A_i`` of pairs at distance exactly ``i``."""
        return (self.distance == i).astype(np.int64)


def distance_data(g: Graph) -> DistanceData:
    g.require_connected()
    dist = shortest_path(csr_matrix(g.adjacency), method="D", unweighted=True, directed=False)
    dist = dist.astype(np.int64)
    ecc = dist.max(axis=1)
    for arr in (dist, ecc):
        arr.setflags(write=False)
    return DistanceData(dist, ecc, int(ecc.max()))


@dataclass(frozen=True)
class Bipartition:
    side_b: tuple
    side_c: tuple
    k: Optional[int] = None
    ell: Optional[int] = None

    @property
    def semiregular(self) -> bool:
        return self.k is not None and self.ell is not None

    def side_of(self, u: int) -> str:
        return "B" if u in self._b_set else "C"

    @cached_property
    def _b_set(self) -> frozenset:
        return frozenset(self.side_b)

    def swapped(self) -> "Bipartition":
        return Bipartition(self.side_c, self.side_b, self.ell, self.k)


def _odd_cycle(parent, depth, x, y):
    # x ~ y with equal color; join both tree paths at their common ancestor
    px, py = [x], [y]
    while depth[px[-1]] > depth[py[-1]]:
        px.append(parent[px[-1]])
    while depth[py[-1]] > depth[px[-1]]:
        py.append(parent[py[-1]])
    while px[-1] != py[-1]:
        px.append(parent[px[-1]])
        py.append(parent[py[-1]])
    return px + py[-2::-1]


def bipartition(g: Graph) -> Bipartition:
    """2-color ``g`` by BFS parity.

    When both color classes have constant but different degrees, ``B`` is
    the class with the smaller degree (so ``k < ell`` and ``|B| >= |C|``);
    otherwise ``B`` is the class containing vertex 0.
    """
    g.require_connected()
    color = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in g.neighbors[x]:
            if color[y] < 0:
                color[y] = 1 - color[x]
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
            elif color[y] == color[x]:
                cycle = _odd_cycle(parent, depth, x, y)
                raise NotBipartite(f"odd cycle of length {len(cycle)}", cycle=cycle)
    side0 = tuple(u for u in range(g.n) if color[u] == 0)
    side1 = tuple(u for u in range(g.n) if color[u] == 1)
    part = Bipartition(side0, side1)
    try:
        k, ell = semiregular_profile(g, part)
    except NotSemiregular:
        return part
    if k > ell:
        return Bipartition(side1, side0, ell, k)
    return Bipartition(side0, side1, k, ell)


def semiregular_profile(g: Graph, part: Bipartition) -> tuple:
    """``(k, ell)``: the common degree on ``part.side_b`` and on ``part.side_c``."""
    deg = g.degrees
    out = []
    for side in (part.side_b, part.side_c):
        if not side:
            out.append(0)
            continue
        ds = deg[list(side)]
        if ds.min() != ds.max():
            lo, hi = side[int(ds.argmin())], side[int(ds.argmax())]
            raise NotSemiregular(
                f"vertices {lo} and {hi} lie on the same side with degrees "
                f"{int(deg[lo])} and {int(deg[hi])}", witnesses=[lo, hi])
        out.append(int(ds[0]))
    return out[0], out[1]


def with_profile(g: Graph, part: Bipartition) -> Bipartition:
    k, ell = semiregular_profile(g, part)
    return replace(part, k=k, ell=ell)


@dataclass(frozen=True, eq=False)
class HalvedPair:
    """Halved graphs of a bipartite graph.

    ``h_b`` lives on ``side_b`` relabeled in increasing order (vertex ``i`` of
    ``h_b`` is ``side_b[i]``), likewise ``h_c``.  ``r`` / ``s`` are ``None``
    when ``N N^T - k I`` (resp. ``N^T N - ell I``) is not a multiple of the
    halved adjacency matrix.
    """

    h_b: Graph
    h_c: Graph
    r: Optional[int]
    s: Optional[int]
    side_b: tuple = field(default=())
    side_c: tuple = field(default=())


def _halve(a: np.ndarray, side: tuple, deg: Optional[int]):
    idx = np.asarray(side, dtype=np.int64)
    others = np.setdiff1d(np.arange(a.shape[0]), idx)
    nb = a[np.ix_(idx, others)]
    gram = nb @ nb.T
    off = gram - np.diag(np.diag(gram))
    iu = np.transpose(np.nonzero(np.triu(off)))
    h = Graph.from_edges(len(idx), [tuple(e) for e in iu])
    vals = np.unique(off[off > 0])
    scalar = None
    if vals.size <= 1:
        candidate = int(vals[0]) if vals.size else 0
        if deg is not None and np.array_equal(gram, candidate * h.adjacency + deg * np.eye(len(idx), dtype=np.int64)):
            scalar = candidate
    return h, scalar


def halved_graphs(g: Graph, part: Bipartition) -> HalvedPair:
    """Distance-two graphs on each side plus the fitted constants ``r, s``.

    For a connected bipartite graph the two halves are exactly the two color
    classes, so no component search is needed.  Edgeless halves report
    ``0`` for their constant.
    """
    a = g.adjacency
    h_b, r = _halve(a, part.side_b, part.k)
    h_c, s = _halve(a, part.side_c, part.ell)
    return HalvedPair(h_b, h_c, r, s, tuple(part.side_b), tuple(part.side_c))


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``math.inf`` for a forest."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in g.neighbors[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    best = min(best, dist[x] + dist[y] + 1)
    return best
