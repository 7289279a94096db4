"""GF(2) cut-rank, verification of rank decompositions, and two tree/cut lemmas."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead not in basis:
                basis[lead] = r
                break
            r ^= basis[lead]
    return len(basis)


def _cross_rows(g: Graph, left: list[int], right: list[int]) -> list[int]:
    col = {v: i for i, v in enumerate(right)}
    rows = []
    for u in left:
        r = 0
        for w in g.adj[u]:
            j = col.get(w)
            if j is not None:
                r |= 1 << j
        rows.append(r)
    return rows


def _check_partition(g: Graph, v1: Iterable[int], v2: Iterable[int]) -> tuple[list[int], list[int]]:
    a, b = sorted(set(v1)), sorted(set(v2))
    if set(a) & set(b):
        raise ValueError("the two sides overlap")
    if len(a) + len(b) != g.n or any(not 0 <= v < g.n for v in a + b):
        raise ValueError("the two sides must partition the vertex set")
    return a, b


def cutrank(g: Graph, v1: Iterable[int], v2: Iterable[int]) -> int:
    a, b = _check_partition(g, v1, v2)
    return gf2_rank(_cross_rows(g, a, b))


@dataclass(frozen=True)
class TernaryTree:
    """Tree with internal degree 3 plus a bijection graph vertices -> leaves.

    ``leaf_of[v]`` is the tree node holding graph vertex ``v``. A one-vertex
    graph uses a single node and no edges.
    """

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    leaf_of: tuple[int, ...]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def validate(self, n: int | None = None) -> None:
        if n is not None and len(self.leaf_of) != n:
            raise ValueError(f"tree maps {len(self.leaf_of)} vertices, graph has {n}")
        if self.num_nodes < 1:
            raise ValueError("empty tree")
        for u, v in self.edges:
            if not (0 <= u < self.num_nodes and 0 <= v < self.num_nodes) or u == v:
                raise ValueError(f"bad tree edge ({u}, {v})")
        if len(set(map(frozenset, self.edges))) != len(self.edges):
            raise ValueError("repeated tree edge")
        if len(self.edges) != self.num_nodes - 1:
            raise ValueError("not a tree: wrong edge count")
        adj = self.adjacency()
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != self.num_nodes:
            raise ValueError("not a tree: disconnected")
        leaves = {u for u in range(self.num_nodes) if len(adj[u]) <= 1}
        if self.num_nodes > 1 and any(len(adj[u]) not in (1, 3) for u in range(self.num_nodes)):
            raise ValueError("node degrees must be 1 or 3")
        if len(set(self.leaf_of)) != len(self.leaf_of) or set(self.leaf_of) != leaves:
            raise ValueError("leaf map must be a bijection onto the leaves")

    def side(self, edge: tuple[int, int]) -> set[int]:
        """Tree nodes on the ``edge[1]`` side once ``edge`` is removed."""
        u, v = edge
        adj = self.adjacency()
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen and not (x == v and w == u):
                    seen.add(w)
                    stack.append(w)
        return seen

    def split(self, edge: tuple[int, int]) -> tuple[list[int], list[int]]:
        """Graph-vertex bipartition induced by a tree edge."""
        nodes = self.side(edge)
        inside = [v for v, leaf in enumerate(self.leaf_of) if leaf in nodes]
        outside = [v for v, leaf in enumerate(self.leaf_of) if leaf not in nodes]
        return outside, inside


def width(g: Graph, t: TernaryTree) -> int:
    """Maximum cut-rank over the edges of a given tree-representation."""
    t.validate(g.n)
    return max((cutrank(g, *t.split(e)) for e in t.edges), default=0)


@dataclass(frozen=True)
class NeighborhoodPartition:
    """Classes on both sides of a cut, keyed by subsets of the row basis.

    ``x_classes[B']`` holds the x-vertices whose neighbourhood in Y is the
    GF(2) sum of the basis rows in ``B'``; ``y_classes[B']`` the y-vertices
    whose neighbourhood within the basis vertices is exactly ``B'``.
    """

    basis: tuple[int, ...]
    x_classes: dict
    y_classes: dict


def neighborhood_partition(g: Graph, x: Iterable[int], y: Iterable[int]) -> NeighborhoodPartition:
    xs, ys = sorted(set(x)), sorted(set(y))
    if set(xs) & set(ys):
        raise ValueError("x and y must be disjoint")
    rows = dict(zip(xs, _cross_rows(g, xs, ys)))

    # first independent rows in vertex-id order; remember how each reduced row
    # is expressed in terms of the chosen basis vertices
    pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (reduced row, combination mask)
    basis: list[int] = []
    for v in xs:
        r, combo = rows[v], 0
        while r:
            lead = r.bit_length() - 1
            if lead not in pivots:
                break
            pr, pc = pivots[lead]
            r ^= pr
            combo ^= pc
        if r:
            pivots[r.bit_length() - 1] = (r, combo ^ (1 << len(basis)))
            basis.append(v)

    def coordinates(row: int) -> frozenset[int]:
        combo = 0
        while row:
            pr, pc = pivots[row.bit_length() - 1]
            row ^= pr
            combo ^= pc
        return frozenset(basis[i] for i in range(len(basis)) if (combo >> i) & 1)

    x_classes: dict = {}
    for v in xs:
        x_classes.setdefault(coordinates(rows[v]), set()).add(v)
    basis_set = set(basis)
    y_classes: dict = {}
    for w in ys:
        key = frozenset(u for u in g.adj[w] if u in basis_set)
        y_classes.setdefault(key, set()).add(w)
    return NeighborhoodPartition(
        tuple(basis),
        {k: frozenset(v) for k, v in x_classes.items()},
        {k: frozenset(v) for k, v in y_classes.items()},
    )


def blocks_homogeneous(g: Graph, part: NeighborhoodPartition) -> bool:
    """Each (X_i, Y_j) block is either complete or edgeless."""
    for xc in part.x_classes.values():
        for yc in part.y_classes.values():
            hits = {g.has_edge(u, w) for u in xc for w in yc}
            if len(hits) > 1:
                return False
    return True


def balanced_edge(t: TernaryTree, labeled: Iterable[int]) -> tuple[int, int]:
    """A tree edge with at least a third of the labelled leaves on each side.

    Orient every edge towards the side holding more labelled leaves, stop at a
    sink, and cut off its heaviest branch.
    """
    lab = set(labeled)
    alpha = len(lab)
    if alpha <= 2:
        raise ValueError("need more than two labelled leaves")
    adj = t.adjacency()
    if any(len(adj[v]) != 1 for v in lab):
        raise ValueError("labelled nodes must be leaves")

    # count[u][w]: labelled leaves on w's side of edge uw
    root = 0
    parent = {root: None}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    below = {u: int(u in lab) for u in order}
    for u in reversed(order[1:]):
        below[parent[u]] += below[u]

    def weight(u: int, w: int) -> int:
        return below[w] if parent.get(w) == u else alpha - below[u]

    node = root
    while True:
        heavier = [w for w in adj[node] if weight(node, w) > alpha - weight(node, w)]
        if not heavier:
            break
        node = heavier[0]
    best = max(adj[node], key=lambda w: (weight(node, w), -w))
    assert weight(node, best) * 3 >= alpha and (alpha - weight(node, best)) * 3 >= alpha
    return (node, best)


def to_text(t: TernaryTree) -> str:
    lines = [f"t {t.num_nodes}"]
    lines += [f"b {u} {v}" for u, v in t.edges]
    lines += [f"l {leaf} {v}" for v, leaf in enumerate(t.leaf_of)]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> TernaryTree:
    num = None
    edges = []
    leaf_map: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "t" and len(parts) == 2:
                num = int(parts[1])
            elif parts[0] == "b" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "l" and len(parts) == 3:
                leaf, v = int(parts[1]), int(parts[2])
                if v in leaf_map:
                    raise ValueError(f"vertex {v} mapped twice")
                leaf_map[v] = leaf
            else:
                raise ValueError(f"unrecognised line {raw!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if num is None:
        raise ValueError("missing 't <num_nodes>' header")
    if sorted(leaf_map) != list(range(len(leaf_map))):
        raise ValueError("leaf map must cover vertices 0..n-1")
    return TernaryTree(num, tuple(edges), tuple(leaf_map[v] for v in range(len(leaf_map))))
