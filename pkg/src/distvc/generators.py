"""Deterministic graph families, the G(n, l) construction, cographs and gadgets."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, bfs_distances
from .hypergraph import Hypergraph
from .rank import TernaryTree, width


@dataclass(frozen=True)
class GnlGraph:
    """Clique ``x_0..x_{n-1}`` joined pairwise by induced paths of length ``2*ell``.

    ``long_paths[(i, j)]`` (``i < j``) lists the internal vertices
    ``y_1^{i,j} .. y_{2ell-1}^{i,j}`` in order from ``x_i`` to ``x_j``.
    """

    graph: Graph
    n: int
    ell: int
    clique: tuple[int, ...]
    long_paths: dict

    def y(self, i: int, j: int, k: int) -> int:
        """Vertex id of ``y_k^{i,j}``; ``k = 0`` is ``x_i`` and ``k = 2*ell`` is ``x_j``."""
        if k == 0:
            return i
        if k == 2 * self.ell:
            return j
        return self.long_paths[(i, j)][k - 1]

    def midpoint(self, i: int, j: int) -> int:
        return self.y(i, j, self.ell)

    def labels(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "clique": list(self.clique),
            "long_paths": {f"{i},{j}": list(p) for (i, j), p in sorted(self.long_paths.items())},
        }


def gnl(n: int, ell: int) -> GnlGraph:
    if n < 2 or ell < 1:
        raise ValueError("gnl needs n >= 2 and ell >= 1")
    edges = list(combinations(range(n), 2))
    nxt = n
    long_paths = {}
    for i, j in combinations(range(n), 2):
        inner = list(range(nxt, nxt + 2 * ell - 1))
        nxt += 2 * ell - 1
        chain = [i] + inner + [j]
        edges += list(zip(chain, chain[1:]))
        long_paths[(i, j)] = tuple(inner)
    return GnlGraph(Graph(nxt, edges), n, ell, tuple(range(n)), long_paths)


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides must be non-empty")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError("gnp needs n >= 0 and 0 <= p <= 1")
    rng = random.Random(seed)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


_FAMILIES = {
    "grid": lambda params, seed: grid(int(params["rows"]), int(params["cols"])),
    "path": lambda params, seed: path(int(params["n"])),
    "cycle": lambda params, seed: cycle(int(params["n"])),
    "clique": lambda params, seed: clique(int(params["n"])),
    "complete_bipartite": lambda params, seed: complete_bipartite(int(params["a"]), int(params["b"])),
    "gnp": lambda params, seed: gnp(int(params["n"]), float(params["p"]), seed),
}


def family(kind: str, params: dict, seed: int = 0) -> Graph:
    if kind not in _FAMILIES:
        raise ValueError(f"unknown family {kind!r}; choose from {sorted(_FAMILIES)}")
    try:
        return _FAMILIES[kind](params, seed)
    except KeyError as exc:
        raise ValueError(f"family {kind!r} is missing parameter {exc}") from None


def pairs_hypergraph(n: int) -> Hypergraph:
    """All 2-subsets of ``n`` vertices (the edges of ``K_n`` as hyperedges)."""
    if n < 2:
        raise ValueError("pairs hypergraph needs n >= 2")
    return Hypergraph(n, [set(e) for e in combinations(range(n), 2)])


# Cographs: a recipe is "v" or [op, child, child, ...] with op in {"union", "join"}.

def random_cograph_recipe(n: int, seed: int = 0):
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)

    def build(k: int):
        if k == 1:
            return "v"
        parts = rng.randint(2, min(3, k))
        cuts = sorted(rng.sample(range(1, k), parts - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [k])]
        return [rng.choice(["union", "join"])] + [build(s) for s in sizes]

    return build(n)


def cograph_with_tree(recipe) -> tuple[Graph, TernaryTree]:
    """Build a cograph from a union/join recipe and a width-1 tree from its cotree.

    Nodes with more than two children are expanded into binary caterpillars
    and the degree-2 root is suppressed. The width is re-verified.
    """
    if recipe is None or recipe == []:
        raise ValueError("recipe must be non-empty")
    edges: list[tuple[int, int]] = []
    tree_edges: list[tuple[int, int]] = []
    leaf_of: list[int] = []
    counter = [0]

    def new_node() -> int:
        counter[0] += 1
        return counter[0] - 1

    def build(node) -> tuple[list[int], int]:
        """Returns (graph vertices, binary-tree node)."""
        if node == "v":
            v = len(leaf_of)
            t = new_node()
            leaf_of.append(t)
            return [v], t
        if not isinstance(node, (list, tuple)) or len(node) < 3 or node[0] not in ("union", "join"):
            raise ValueError(f"bad recipe node {node!r}")
        parts = [build(child) for child in node[1:]]
        if node[0] == "join":
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    edges.extend((a, b) for a in parts[i][0] for b in parts[j][0])
        verts, top = parts[0]
        verts = list(verts)
        for other_verts, other_top in parts[1:]:
            joint = new_node()
            tree_edges.append((joint, top))
            tree_edges.append((joint, other_top))
            verts += other_verts
            top = joint
        return verts, top

    _, root = build(recipe)
    g = Graph(len(leaf_of), edges)
    if g.n == 1:
        tree = TernaryTree(1, (), (0,))
    else:
        kids = [b for a, b in tree_edges if a == root]
        rest = [e for e in tree_edges if e[0] != root]
        rest.append((kids[0], kids[1]))
        tree = _renumber(counter[0], rest, leaf_of, drop=root)
    if width(g, tree) > 1:
        raise AssertionError("cotree-derived tree has width above 1")
    return g, tree


def _renumber(num: int, edges, leaf_of, drop: int) -> TernaryTree:
    ids = {}
    for v in range(num):
        if v != drop:
            ids[v] = len(ids)
    return TernaryTree(len(ids), tuple((ids[a], ids[b]) for a, b in edges), tuple(ids[x] for x in leaf_of))


def subdivided_biclique(na: int, nb: int, length: int) -> tuple[Graph, list[int], list[int], dict]:
    """Every ``a`` joined to every ``b`` by a private path with ``length`` edges.

    Returns ``(graph, A, B, inner)`` where ``inner[(a, b)]`` lists the internal
    path vertices from the ``a`` end.
    """
    if na < 1 or nb < 1 or length < 2:
        raise ValueError("need non-empty sides and paths of length >= 2")
    A = list(range(na))
    B = list(range(na, na + nb))
    edges = []
    inner = {}
    nxt = na + nb
    for a in A:
        for b in B:
            mids = list(range(nxt, nxt + length - 1))
            nxt += length - 1
            chain = [a] + mids + [b]
            edges += list(zip(chain, chain[1:]))
            inner[(a, b)] = mids
    return Graph(nxt, edges), A, B, inner


def chorded_biclique(na: int, nb: int, lengths, chords: int, seed: int = 0,
                     anchor: tuple[int, int] | None = None, keep=None
                     ) -> tuple[Graph, list[int], list[int]]:
    """Subdivided biclique with per-pair path lengths and random chords between
    internal vertices of different paths.

    ``lengths`` is either an int or a ``(low, high)`` range sampled per pair.
    ``anchor = (lo, hi)`` puts the first chord end at a position in that range
    counted from the ``a`` end. A chord is kept if ``keep(candidate)`` holds;
    by default, if it leaves every ``a``-``b`` distance unchanged.
    """
    rng = random.Random(seed)
    A = list(range(na))
    B = list(range(na, na + nb))
    edges = []
    paths = {}
    nxt = na + nb
    for a in A:
        for b in B:
            ln = lengths if isinstance(lengths, int) else rng.randint(*lengths)
            mids = list(range(nxt, nxt + ln - 1))
            nxt += ln - 1
            chain = [a] + mids + [b]
            edges += list(zip(chain, chain[1:]))
            paths[(a, b)] = chain
    g = Graph(nxt, edges)
    base = {a: bfs_distances(g, a) for a in A}

    def same_distances(cand: Graph) -> bool:
        dist = {a: bfs_distances(cand, a) for a in A}
        return all(dist[a][b] == base[a][b] for a in A for b in B)

    keep = keep or same_distances
    keys = sorted(paths)
    for _ in range(chords * 20):
        if chords <= 0:
            break
        p, q = rng.sample(keys, 2)
        if anchor is None:
            u = rng.choice(paths[p][1:-1])
        else:
            u = paths[p][rng.randint(max(anchor[0], 1), min(anchor[1], len(paths[p]) - 2))]
        v = rng.choice(paths[q][1:-1])
        if g.has_edge(u, v):
            continue
        cand = Graph(g.n, g.edges + ((u, v),))
        if keep(cand):
            g = cand
            chords -= 1
    return g, A, B
