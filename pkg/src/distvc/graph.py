"""Simple undirected graphs, BFS metric, balls and lexicographically minimum paths."""

from __future__ import annotations

import hashlib
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

INF = math.inf  # distance to an unreachable vertex

MAX_VERTICES = 100_000


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``; neighbor lists
    are sorted tuples.
    """

    __slots__ = ("n", "edges", "adj", "_adj_sets", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0 or n > MAX_VERTICES:
            raise ValueError(f"vertex count out of range: {n}")
        seen = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an invalid vertex id for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"parallel edge {e}")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in nbrs)
        self._adj_sets = tuple(frozenset(x) for x in self.adj)
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise ValueError(f"invalid vertex id {v!r} (n={self.n})")

    def restrict(self, keep: Iterable[int]) -> "Graph":
        """Same vertex ids, only the edges with both endpoints in ``keep``."""
        keep = set(keep)
        for v in keep:
            self.check_vertex(v)
        return Graph(self.n, [(u, v) for u, v in self.edges if u in keep and v in keep])

    def delete(self, removed: Iterable[int]) -> "Graph":
        """Same vertex ids with every edge touching ``removed`` dropped."""
        removed = set(removed)
        return Graph(self.n, [(u, v) for u, v in self.edges if u not in removed and v not in removed])

    def fingerprint(self) -> str:
        return hashlib.sha256(to_text(self).encode()).hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class EdgeOrder:
    """A strict total order on the edges of a graph.

    The default order sorts edges by ``(min endpoint, max endpoint)``.
    """

    def __init__(self, ranked_edges: Sequence[tuple[int, int]]):
        self._rank = {}
        for i, (u, v) in enumerate(ranked_edges):
            e = (u, v) if u < v else (v, u)
            if e in self._rank:
                raise ValueError(f"edge {e} ranked twice")
            self._rank[e] = i

    @classmethod
    def canonical(cls, g: Graph) -> "EdgeOrder":
        return cls(g.edges)

    @classmethod
    def shuffled(cls, g: Graph, seed: int) -> "EdgeOrder":
        edges = list(g.edges)
        random.Random(seed).shuffle(edges)
        return cls(edges)

    def key(self, u: int, v: int) -> int:
        return self._rank[(u, v) if u < v else (v, u)]

    def covers(self, g: Graph) -> bool:
        return len(self._rank) == g.m and all(e in self._rank for e in g.edges)


def bfs_distances(g: Graph, source: int) -> list:
    """Hop distances from ``source``; unreachable vertices get ``INF``."""
    g.check_vertex(source)
    dist: list = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] is INF:
                dist[w] = du
                queue.append(w)
    return dist


@lru_cache(maxsize=64)
def distance_matrix(g: Graph) -> tuple[tuple, ...]:
    return tuple(tuple(bfs_distances(g, s)) for s in range(g.n))


def ball(g: Graph, x: int, k: int) -> frozenset[int]:
    if k < 0:
        raise ValueError("radius must be non-negative")
    dist = bfs_distances(g, x)
    return frozenset(v for v in range(g.n) if dist[v] <= k)


def eccentricity(g: Graph, x: int) -> int:
    """Largest finite distance from ``x`` (eccentricity within its component)."""
    return max(d for d in bfs_distances(g, x) if d is not INF)


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    """Connectivity of ``g``, or of the subgraph induced by ``within``."""
    verts = set(range(g.n)) if within is None else set(within)
    if not verts:
        return True
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabelled to ``0..|s|-1``.

    Returns the subgraph and ``mapping`` where ``mapping[i]`` is the original id
    of new vertex ``i`` (original ids kept in increasing order).
    """
    verts = sorted(set(s))
    for v in verts:
        g.check_vertex(v)
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(verts), edges), verts


def lex_min_path_tree(g: Graph, z: int, order: EdgeOrder | None = None) -> list:
    """Successor map of the minimum paths towards ``z``.

    ``succ[u]`` is the vertex after ``u`` on the shortest ``u -> z`` path that is
    smallest when edge sequences are compared from the last edge backwards.
    ``succ[z]`` and unreachable vertices map to ``None``.

    Works layer by layer from ``z``: every vertex of a layer is ranked by the
    pair (rank of its best successor, order of the connecting edge), which is
    exactly the reversed-edge-sequence comparison restricted to one layer.
    """
    order = order or EdgeOrder.canonical(g)
    dist = bfs_distances(g, z)
    succ: list = [None] * g.n
    rank = [0] * g.n
    layers: dict[int, list[int]] = {}
    for v in range(g.n):
        if dist[v] is not INF:
            layers.setdefault(dist[v], []).append(v)
    for k in range(1, len(layers)):
        keyed = []
        for u in layers[k]:
            best = None
            for w in g.adj[u]:
                if dist[w] == k - 1:
                    cand = (rank[w], order.key(u, w), w)
                    if best is None or cand < best:
                        best = cand
            succ[u] = best[2]
            keyed.append((best[0], best[1], u))
        keyed.sort()
        for r, (_, _, u) in enumerate(keyed):
            rank[u] = r
    return succ


def path_from(succ: Sequence, u: int, z: int) -> tuple[int, ...]:
    """Follow a successor map from ``u`` to ``z``."""
    if u == z:
        return (u,)
    if succ[u] is None:
        raise ValueError(f"vertex {u} cannot reach {z}")
    path = [u]
    while path[-1] != z:
        path.append(succ[path[-1]])
    return tuple(path)


def lex_min_path(g: Graph, x: int, z: int, order: EdgeOrder | None = None) -> tuple[int, ...]:
    g.check_vertex(x)
    return path_from(lex_min_path_tree(g, z, order), x, z)


def path_edges(path: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) if a < b else (b, a) for a, b in zip(path, path[1:])]


def is_path(g: Graph, path: Sequence[int]) -> bool:
    return len(set(path)) == len(path) and all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


@dataclass(frozen=True)
class Cross:
    """Two distinct edges ``v1-u2`` and ``u1-v2`` between the ``x1z``- and ``x2z``-paths.

    ``u1`` is at or before ``v1`` on the first path, ``u2`` at or before ``v2``
    on the second. ``kind`` is one of ``"a"`` (both sides proper), ``"b"``,
    ``"c"`` and ``"d"`` (one side collapsed to a single vertex); ``swapped``
    records that the collapsed side is the first path.
    """

    x1: int
    x2: int
    z: int
    u1: int
    v1: int
    u2: int
    v2: int
    kind: str
    swapped: bool = False


def _classify(u1, v1, u2, v2, succ, g: Graph) -> tuple[str, bool]:
    if u1 != v1 and u2 != v2:
        return "a", False
    swapped = u1 == v1
    if swapped:
        u1, v1, u2, v2 = u2, v2, u1, v1
    # now u2 == v2: both edges meet at v2
    if g.has_edge(u1, v1):
        return "c", swapped
    if succ[v2] == v1:
        return "d", swapped
    return "b", swapped


def find_crosses(g: Graph, x1: int, x2: int, z: int, order: EdgeOrder | None = None) -> list[Cross]:
    """Every cross between the minimum ``x1z``- and ``x2z``-paths, classified.

    Configurations where ``v1 == v2`` are not crosses: the two edges then just
    meet at a common vertex of both paths. Neither are pairs of edges of one
    and the same path, which only arise once the two paths have merged.
    """
    if x1 == x2:
        raise ValueError("x1 and x2 must differ")
    for v in (x1, x2, z):
        g.check_vertex(v)
    succ = lex_min_path_tree(g, z, order)
    p1 = path_from(succ, x1, z)
    p2 = path_from(succ, x2, z)
    pos2 = {v: i for i, v in enumerate(p2)}
    own1, own2 = set(path_edges(p1)), set(path_edges(p2))
    out = []
    for i1, u1 in enumerate(p1):
        for v1 in p1[i1:]:
            # u2 is a neighbor of v1 on p2, v2 a neighbor of u1 on p2 at or after u2
            for u2 in g.adj[v1]:
                i2 = pos2.get(u2)
                if i2 is None:
                    continue
                for v2 in p2[i2:]:
                    if v2 == v1 or not g.has_edge(u1, v2):
                        continue
                    if {v1, u2} == {u1, v2}:
                        continue
                    pair = {tuple(sorted((v1, u2))), tuple(sorted((u1, v2)))}
                    if pair <= own1 or pair <= own2:
                        continue
                    kind, swapped = _classify(u1, v1, u2, v2, succ, g)
                    out.append(Cross(x1, x2, z, u1, v1, u2, v2, kind, swapped))
    return out


def to_text(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3:
                if n is not None:
                    raise ValueError("duplicate header")
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise ValueError("edge before header")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"unrecognised line {raw!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges)


def read_graph(path) -> Graph:
    with open(path) as fh:
        return from_text(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_text(g))
