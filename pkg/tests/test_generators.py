from __future__ import annotations

import random
from itertools import combinations
from math import comb

import pytest

from distvc.balls import b_all, b_ell
from distvc.generators import (
    chorded_biclique,
    clique,
    cograph_with_tree,
    complete_bipartite,
    cycle,
    family,
    gnl,
    gnp,
    pairs_hypergraph,
    path,
    random_cograph_recipe,
    subdivided_biclique,
)
from distvc.graph import ball, bfs_distances
from distvc.hypergraph import is_shattered, trace, two_vc_dimension, vc_dimension


@pytest.mark.parametrize("n,ell", [(2, 1), (3, 2), (4, 2), (5, 3)])
def test_gnl_counts(n, ell):
    gg = gnl(n, ell)
    assert gg.graph.n == n + comb(n, 2) * (2 * ell - 1)
    assert gg.graph.m == comb(n, 2) * (1 + 2 * ell)
    assert len(gg.long_paths) == comb(n, 2)
    assert all(len(p) == 2 * ell - 1 for p in gg.long_paths.values())


def test_gnl_4_2():
    gg = gnl(4, 2)
    assert gg.graph.n == 22
    assert gg.clique == (0, 1, 2, 3)
    assert gg.long_paths[(0, 1)] == (4, 5, 6)  # numbered by (i, j, k)
    assert gg.long_paths[(2, 3)] == (19, 20, 21)
    for i, j in combinations(range(4), 2):
        assert ball(gg.graph, gg.midpoint(i, j), 2) & {0, 1, 2, 3} == {i, j}


def test_gnl_2_1_is_a_triangle():
    g = gnl(2, 1).graph
    assert g.n == 3 and g.adj == ((1, 2), (0, 2), (0, 1))


def test_gnl_long_paths_are_induced():
    gg = gnl(4, 3)
    for (i, j), inner in gg.long_paths.items():
        chain = (i,) + inner + (j,)
        assert all(gg.graph.has_edge(a, b) for a, b in zip(chain, chain[1:]))
        for v in inner:
            assert gg.graph.degree(v) == 2
        assert bfs_distances(gg.graph, i)[gg.midpoint(i, j)] == gg.ell


def test_gnl_labels():
    labels = gnl(3, 1).labels()
    assert labels["clique"] == [0, 1, 2] and labels["long_paths"]["0,1"] == [3]


def test_no_three_on_a_long_path():
    gg = gnl(3, 2)
    h = b_all(gg.graph).hypergraph
    rng = random.Random(0)
    checked = 0
    for (i, j), inner in gg.long_paths.items():
        chain = (i,) + inner + (j,)
        for _ in range(30):
            a, b, c = sorted(rng.sample(range(len(chain)), 3))
            z1, z2, z3 = chain[a], chain[b], chain[c]
            outside = [v for v in range(gg.graph.n) if v not in chain[a:c + 1]]
            z4 = rng.choice(outside)
            assert frozenset({z2, z4}) not in trace(h, {z1, z2, z3, z4})
            assert not is_shattered(h, {z1, z2, z3, z4})
            checked += 1
    assert checked == 90


def test_family_examples():
    g = family("grid", {"rows": 3, "cols": 3})
    assert (g.n, g.m) == (9, 12)
    assert gnp(10, 0.3, seed=7) == gnp(10, 0.3, seed=7)
    assert family("gnp", {"n": 10, "p": 0.3}, 7) == gnp(10, 0.3, seed=7)
    assert clique(5).m == 10
    assert cycle(6).m == 6 and path(6).m == 5
    assert complete_bipartite(2, 3).m == 6
    with pytest.raises(ValueError):
        family("grid", {"rows": 3})
    with pytest.raises(ValueError):
        family("moebius", {})


def test_pairs_hypergraph():
    h = pairs_hypergraph(5)
    assert h.n == 5 and len(h) == 10
    assert two_vc_dimension(h) == 5
    assert vc_dimension(h) == 2
    assert pairs_hypergraph(2).edges() == [frozenset({0, 1})]


def test_cograph_recipes_are_deterministic():
    assert random_cograph_recipe(9, 3) == random_cograph_recipe(9, 3)
    assert cograph_with_tree(random_cograph_recipe(9, 3)) == cograph_with_tree(random_cograph_recipe(9, 3))


def test_subdivided_biclique():
    g, A, B, inner = subdivided_biclique(2, 3, 4)
    assert g.n == 5 + 6 * 3
    for a in A:
        d = bfs_distances(g, a)
        assert all(d[b] == 4 for b in B)


def test_chorded_biclique_keeps_distances():
    g0, A, B, _ = subdivided_biclique(3, 3, 6)
    g, A2, B2 = chorded_biclique(3, 3, 6, chords=5, seed=4)
    assert (A, B) == (A2, B2) and g.m > g0.m
    for a in A:
        assert [bfs_distances(g, a)[b] for b in B] == [bfs_distances(g0, a)[b] for b in B]
    assert chorded_biclique(3, 3, (5, 9), chords=3, seed=1) == chorded_biclique(3, 3, (5, 9), chords=3, seed=1)


def test_gnl_two_vc_layer():
    assert two_vc_dimension(b_ell(gnl(4, 2).graph, 2).hypergraph) >= 4
