from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from distvc.graph import Graph
from distvc.hypergraph import Hypergraph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, chosen) if keep]
    if connected:
        # a random spanning path keeps things connected without biasing too much
        perm = draw(st.permutations(range(n)))
        edges = sorted(set(edges) | {tuple(sorted(e)) for e in zip(perm, perm[1:])})
    return Graph(n, edges)


@st.composite
def hypergraphs(draw, max_n: int = 8, max_edges: int = 12, allow_empty: bool = True) -> Hypergraph:
    n = draw(st.integers(1, max_n))
    low = 0 if allow_empty else 1
    masks = draw(st.lists(st.integers(low, (1 << n) - 1), max_size=max_edges))
    return Hypergraph(n, masks)
