"""Deterministic generators for named graphs and small bipartite graphs."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

import networkx as nx
import numpy as np

from .errors import BadParams, FixtureGateFailed, UnknownFamily
from .graph import Graph, bipartition, distance_data, halved_graphs


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple = ()


def _delorme():
    # black (x, y) -> 4x + y, white (x, y) -> 16 + 4x + y; indices mod 4
    edges = []
    for x, y in itertools.product(range(4), repeat=2):
        white = 16 + 4 * x + y
        for bx, by in ((x, y), (x + 1, y), (x + 1, y + 1)):
            edges.append((white, 4 * (bx % 4) + by % 4))
    return Graph.from_edges(32, edges)


def _dihedral_mul(g, h):
    # element (a, i) stands for s^a r^i in the dihedral group of order 16
    a, i = g
    b, j = h
    return ((a + b) % 2, ((-i if b else i) + j) % 8)


def _cay_d8():
    elements = [(0, i) for i in range(8)] + [(1, i) for i in range(8)]
    index = {e: k for k, e in enumerate(elements)}
    connection = [(1, 1), (1, 2), (1, 4)]
    edges = [(index[g], index[_dihedral_mul(g, t)]) for g in elements for t in connection]
    return Graph.from_edges(16, edges)


def _hypercube(dim):
    n = 1 << dim
    return Graph.from_edges(n, [(u, u ^ (1 << b)) for u in range(n) for b in range(dim) if u < u ^ (1 << b)])


def _cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _complete_bipartite(m, n):
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def _subdivision_k4():
    # branch vertices 0..3, one subdivision vertex per edge of K4
    edges = []
    for s, (i, j) in enumerate(itertools.combinations(range(4), 2)):
        edges += [(i, 4 + s), (j, 4 + s)]
    return Graph.from_edges(10, edges)


def _heawood():
    # points 0..6, lines 7..13 of the Fano plane {j, j+1, j+3} mod 7
    return Graph.from_edges(14, [(p % 7, 7 + j) for j in range(7) for p in (j, j + 1, j + 3)])


def _petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + [(i, 5 + i) for i in range(5)])


_FAMILIES = {
    "delorme": (_delorme, 0),
    "cay_d8": (_cay_d8, 0),
    "hypercube": (_hypercube, 1),
    "cycle": (_cycle, 1),
    "path": (_path, 1),
    "complete_bipartite": (_complete_bipartite, 2),
    "subdivision_k4": (_subdivision_k4, 0),
    "heawood": (_heawood, 0),
    "petersen": (_petersen, 0),
}

FAMILIES = tuple(_FAMILIES)


def generate(spec, *params) -> Graph:
    """Build a named graph: ``generate("cycle", 6)`` or ``generate(FamilySpec("cycle", (6,)))``."""
    if isinstance(spec, FamilySpec):
        name, params = spec.name, tuple(spec.params)
    else:
        name = spec
    if name not in _FAMILIES:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(FAMILIES)}", family=name)
    build, arity = _FAMILIES[name]
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} integer parameter(s), got {len(params)}", family=name)
    try:
        params = tuple(int(p) for p in params)
    except (TypeError, ValueError):
        raise BadParams(f"{name} parameters must be integers", family=name) from None
    minimum = {"hypercube": 1, "cycle": 3, "path": 2, "complete_bipartite": 1}.get(name, 0)
    if any(p < minimum for p in params):
        raise BadParams(f"{name} parameters must be >= {minimum}", family=name, params=list(params))
    g = build(*params)
    if name in _GATES:
        _GATES[name](g)
    return g


# Fixture gates.  The two example graphs are transcribed from drawings, so
# their published spectra serve as the acceptance anchor.

DELORME_SPECTRUM = ((3.0, 1), (np.sqrt(5), 6), (1.0, 9), (-1.0, 9), (-np.sqrt(5), 6), (-3.0, 1))
CAY_D8_SPECTRUM = ((3.0, 1), (np.sqrt(3), 4), (1.0, 3), (-1.0, 3), (-np.sqrt(3), 4), (-3.0, 1))
CAY_D8_HALVED_SPECTRUM = ((6.0, 1), (0.0, 4), (-2.0, 3))


def spectrum_matches(a: np.ndarray, expected, atol: float = 1e-8) -> bool:
    w = np.sort(np.linalg.eigvalsh(np.asarray(a, dtype=float)))[::-1]
    target = np.concatenate([[val] * m for val, m in expected])
    return len(w) == len(target) and bool(np.abs(w - target).max() <= atol)


def length3_witness(g: Graph):
    """A vertex ``u`` with two vertices at distance 3 reached by 2 and by 1 walks of length 3."""
    a = g.adjacency
    walks = a @ a @ a
    dist = distance_data(g).distance
    for u in range(g.n):
        at3 = np.flatnonzero(dist[u] == 3)
        two = at3[walks[u, at3] == 2]
        one = at3[walks[u, at3] == 1]
        if two.size and one.size:
            return int(u), int(two[0]), int(one[0])
    return None


def _gate_delorme(g):
    if not spectrum_matches(g.adjacency, DELORME_SPECTRUM):
        raise FixtureGateFailed("delorme: spectrum differs from the published one")
    if distance_data(g).diameter != 5:
        raise FixtureGateFailed("delorme: diameter is not 5")
    if length3_witness(g) is None:
        raise FixtureGateFailed("delorme: no 2-walk / 1-walk distance-3 witness")


def _gate_cay_d8(g):
    if g.n != 16 or not spectrum_matches(g.adjacency, CAY_D8_SPECTRUM):
        raise FixtureGateFailed("cay_d8: spectrum differs from the published one")
    halves = halved_graphs(g, bipartition(g))
    for h in (halves.h_b, halves.h_c):
        if not spectrum_matches(h.adjacency, CAY_D8_HALVED_SPECTRUM):
            raise FixtureGateFailed("cay_d8: halved graph spectrum differs from the published one")


_GATES = {"delorme": _gate_delorme, "cay_d8": _gate_cay_d8}


def standard_corpus() -> list:
    """Named graphs used by the invariant suites, as ``(label, Graph)`` pairs."""
    specs = [
        ("delorme",), ("cay_d8",), ("subdivision_k4",), ("heawood",), ("petersen",),
        ("hypercube", 2), ("hypercube", 3), ("hypercube", 4),
        ("cycle", 3), ("cycle", 5), ("cycle", 6), ("cycle", 7), ("cycle", 8),
        ("path", 2), ("path", 3), ("path", 5),
        ("complete_bipartite", 2, 3), ("complete_bipartite", 3, 3), ("complete_bipartite", 1, 4),
        ("complete_bipartite", 2, 5),
    ]
    return [(" ".join(map(str, s)), generate(s[0], *s[1:])) for s in specs]


# Small connected bipartite graphs, built one vertex at a time: every
# connected graph has a non-cut vertex, so attaching a new vertex to a
# nonempty subset of one color class of each connected bipartite graph on
# n - 1 vertices reaches every isomorphism class on n vertices.

def _certificate(adj: list) -> tuple:
    colors = [len(nb) for nb in adj]
    for _ in range(3):
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        last = sigs
    return tuple(sorted(Counter(last).items()))


def _to_nx(adj):
    h = nx.Graph()
    h.add_nodes_from(range(len(adj)))
    h.add_edges_from((u, v) for u in range(len(adj)) for v in adj[u] if u < v)
    return h


def _next_level(level):
    out = []
    buckets = {}
    for adj, color in level:
        n = len(adj)
        for side in (0, 1):
            members = [v for v in range(n) if color[v] == side]
            for size in range(1, len(members) + 1):
                for subset in itertools.combinations(members, size):
                    new = [list(nb) for nb in adj] + [list(subset)]
                    for v in subset:
                        new[v].append(n)
                    cert = _certificate(new)
                    bucket = buckets.setdefault(cert, [])
                    cand = _to_nx(new)
                    if any(nx.vf2pp_is_isomorphic(cand, other) for other in bucket):
                        continue
                    bucket.append(cand)
                    out.append((new, color + [1 - side]))
    return out


def enumerate_small_bipartite(max_n: int) -> Iterator[Graph]:
    """Connected bipartite graphs on ``2..max_n`` vertices, one per isomorphism class.

    Deterministic and restartable; within each order graphs appear in
    generation order.
    """
    if max_n > 12:
        raise BadParams("enumeration is limited to max_n <= 12", max_n=max_n)
    level = [([[1], [0]], [0, 1])]
    n = 2
    while n <= max_n:
        for adj, _ in level:
            yield Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
        n += 1
        if n <= max_n:
            level = _next_level(level)
