from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import graphs
from distvc.balls import b_all, b_ell, distance_vc, self_duality_check, verify_witness
from distvc.errors import CapExceeded
from distvc.generators import clique, gnp, path
from distvc.graph import Graph, ball, induced_subgraph
from distvc.hypergraph import two_vc_dimension


def contents(bh):
    return [set(e) for e in bh.hypergraph.edges()]


def test_b_ell_examples():
    g = gnp(6, 0.5, seed=1)
    assert contents(b_ell(g, 0)) == [{v} for v in range(6)]
    assert contents(b_ell(clique(3), 1)) == [{0, 1, 2}] * 3
    assert contents(b_ell(path(5), 1)) == [{0, 1}, {0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4}]
    assert b_ell(path(5), 1).labels[2] == (2, 1)
    with pytest.raises(ValueError):
        b_ell(g, -1)


def test_b_all_examples():
    assert contents(b_all(Graph(1))) == [{0}]
    got = {frozenset(e) for e in contents(b_all(path(3)))}
    assert got == {frozenset(s) for s in [{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}]}
    assert got == oracles.all_balls(3, path(3).edges)


@settings(max_examples=50)
@given(graphs(max_n=8), st.integers(0, 4))
def test_b_ell_inside_b_all(g, ell):
    everything = set(b_all(g).hypergraph.edges())
    assert set(b_ell(g, ell).hypergraph.edges()) <= everything


@settings(max_examples=50)
@given(graphs(max_n=8), st.integers(0, 4))
def test_ball_monotone_and_self_dual(g, ell):
    for x in range(g.n):
        assert ball(g, x, ell) <= ball(g, x, ell + 1)
    assert self_duality_check(g, ell)


def test_induced_balls_are_not_restrictions():
    # C_5 minus one vertex is P_4, where the radius-2 ball at an end loses the far end
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    sub, mapping = induced_subgraph(g, [0, 1, 2, 3])
    restricted = [set(mapping[v] for v in range(4)) & ball(g, mapping[c], 2) for c in range(4)]
    induced = [{mapping[v] for v in ball(sub, c, 2)} for c in range(4)]
    assert restricted[0] == {0, 1, 2, 3} and induced[0] == {0, 1, 2}
    assert restricted != induced


def test_distance_vc_examples():
    assert distance_vc(Graph(1)).value == 0
    assert distance_vc(path(5)).value == 2 == oracles.distance_vc(5, path(5).edges)
    k5 = clique(5)
    layer = b_ell(k5, 1).hypergraph
    # every ball is V, so any pair (and nothing larger) is 2-shattered
    assert two_vc_dimension(layer) == 2 == oracles.two_vc(5, [set(e) for e in layer.edges()])
    res = distance_vc(k5, "two_vc")
    assert res.value == oracles.distance_vc(5, k5.edges, "two_vc") == 2
    assert verify_witness(k5, res.subgraph, res.shattered, "two_vc")


def test_second_component_adds_the_empty_trace():
    # K_2 plus an isolated vertex: {u, v} is shattered only thanks to the
    # isolated vertex, so this is not the maximum over components
    g = Graph(3, [(0, 1)])
    res = distance_vc(g)
    assert res.value == 2 == oracles.distance_vc(3, g.edges)
    assert distance_vc(Graph(2, [(0, 1)])).value == 1
    assert distance_vc(Graph(2)).value == 1


@pytest.mark.parametrize("seed", range(8))
def test_distance_vc_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    g = gnp(n, rng.choice([0.3, 0.5, 0.7]), seed=seed)
    for mode in ("vc", "two_vc"):
        res = distance_vc(g, mode)
        assert res.exact
        assert res.value == oracles.distance_vc(n, g.edges, mode)
        assert verify_witness(g, res.subgraph, res.shattered, mode)


@pytest.mark.parametrize("seed", range(4))
def test_two_vc_max_over_components(seed):
    a = gnp(4, 0.6, seed=seed)
    b = gnp(3, 0.6, seed=seed + 50)
    joined = Graph(7, list(a.edges) + [(u + 4, v + 4) for u, v in b.edges])
    whole = distance_vc(joined, "two_vc").value
    assert whole == max(distance_vc(a, "two_vc").value, distance_vc(b, "two_vc").value)


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=7), st.integers(0, 3))
def test_distance_two_vc_dominates_layers(g, ell):
    assert distance_vc(g, "two_vc").value >= two_vc_dimension(b_ell(g, ell).hypergraph)


def test_budgeted_search_is_certified():
    g = gnp(20, 0.2, seed=4)
    with pytest.raises(CapExceeded):
        distance_vc(g)
    res = distance_vc(g, budget=30, seed=2)
    assert not res.exact
    assert verify_witness(g, res.subgraph, res.shattered, "vc")
    assert res == distance_vc(g, budget=30, seed=2)
