from __future__ import annotations

import pytest

from gadgets import chord_scan, escape_battery, escape_gadget, joined_paths
from distvc.errors import InvariantViolation
from distvc.generators import chorded_biclique, path, subdivided_biclique
from distvc.graph import Graph, bfs_distances
from distvc.interference import localized_check
from distvc.pairs import (
    build_pair_context,
    critical_distinct,
    critical_vertices,
    escape_analysis,
    independent_subpair,
    is_independent,
    jump_analysis,
    jump_paths,
    leaving_edges_matching,
    min_paths,
    root_section_separation,
    set_distance,
)


def brute_independent(g, a_set, b_set, ell):
    ab = set(a_set) | set(b_set)
    paths = min_paths(g, a_set, b_set)
    for (a, b), p in paths.items():
        for c in (p[ell - 3], p[len(p) - 1 - (ell - 3)]):
            dist = bfs_distances(g, c)
            if {v for v in ab if dist[v] <= ell} != {a, b}:
                return False
    return True


def test_min_paths_start_and_end():
    g, A, B, _ = subdivided_biclique(2, 2, 5)
    paths = min_paths(g, A, B)
    for (a, b), p in paths.items():
        assert p[0] == a and p[-1] == b and len(p) == 6


def test_critical_vertices_positions():
    paths = {(0, 9): tuple(range(10))}
    crit, crit_b, pre = critical_vertices(paths, 6)
    assert crit[(0, 9)] == 3 and crit_b[(0, 9)] == 6 and pre[(0, 9)] == 2
    with pytest.raises(ValueError):
        critical_vertices(paths, 3)


def test_single_path_root_sections():
    g = path(30)
    ctx = build_pair_context(g, [0], [29], 20, 0)
    assert ctx.rs_a[0] == frozenset(range(18))
    assert ctx.rs_b[29] == frozenset(range(12, 30))
    assert ctx.crit[(0, 29)] == 17 and ctx.pre[(0, 29)] == 16


def test_context_preconditions():
    with pytest.raises(ValueError):
        build_pair_context(path(30), [0], [29], 3, 0)
    with pytest.raises(ValueError):
        build_pair_context(path(30), [0], [10], 20, 0)
    with pytest.raises(ValueError):
        build_pair_context(path(30), [0], [0], 20, 0)


def test_set_distance():
    g = path(10)
    assert set_distance(g, {0, 1}, {5, 9}) == 4
    assert set_distance(Graph(3, [(0, 1)]), {0}, {2}) == float("inf")


def test_already_independent_pair_is_returned():
    g, A, B, _ = subdivided_biclique(2, 2, 24)
    assert is_independent(g, A, B, 20)
    res = independent_subpair(g, A, B, 20, 0, 2, check_sparse=False)
    assert res.found and res.a_set == tuple(A) and res.b_set == tuple(B)
    assert res.matrix.is_proper()


def test_independent_subpair_rejects_unlocalized():
    g, A, B, _ = subdivided_biclique(2, 2, 40)
    with pytest.raises(ValueError):
        independent_subpair(g, A, B, 20, 0, 2)


@pytest.mark.parametrize("seed", range(12))
def test_independent_subpair_output_passes_oracle(seed):
    ell, d = 20, 1
    A, B = [0, 1, 2], [3, 4, 5]
    g, A, B = chorded_biclique(3, 3, (21, 25), chords=5, seed=seed,
                               keep=lambda c: bool(localized_check(c, ell, d, A, B)))
    res = independent_subpair(g, A, B, ell, d, 2, check_sparse=False)
    if res.found:
        assert brute_independent(g, res.a_set, res.b_set, ell)
    assert brute_independent(g, A, B, ell) == bool(is_independent(g, A, B, ell))


def test_critical_vertices_in_rs_b_on_independent_pair():
    g, A, B, _ = subdivided_biclique(3, 3, 24)
    ctx = build_pair_context(g, A, B, 20, 0)
    for (a, b) in ctx.paths:
        assert ctx.crit[(a, b)] in ctx.rs_b[b] and ctx.pre[(a, b)] in ctx.rs_b[b]
    assert root_section_separation(ctx) and critical_distinct(ctx) and leaving_edges_matching(ctx)


def test_disjoint_paths_have_no_escapes():
    g, A, B, _ = subdivided_biclique(2, 2, 24)
    rep = escape_analysis(build_pair_context(g, A, B, 20, 0))
    assert rep.escapes == () and rep.all_acyclic
    assert not rep.escape_property
    assert rep.origin_conflicts == () and rep.matching


def test_single_a_jump_path_is_minimum_path():
    g, A, B, _ = subdivided_biclique(1, 2, 24)
    ctx = build_pair_context(g, A, B, 20, 0)
    rep = escape_analysis(ctx)
    assert rep.escape_property
    for b in B:
        assert jump_paths(ctx, rep, b).paths[0] == ctx.paths[(0, b)]


def test_escape_gadget():
    g, A, B = escape_gadget()
    assert localized_check(g, 20, 0, A, B) and is_independent(g, A, B, 20)
    ctx = build_pair_context(g, A, B, 20, 0)
    rep = escape_analysis(ctx)
    assert [(e.source, e.target, e.b, e.deep) for e in rep.escapes] == [(0, 1, 2, True)]
    assert rep.escape_property and rep.all_acyclic and not rep.origin_conflicts
    jp = jump_paths(ctx, rep, 2)
    assert jp.order == (0, 1) and jp.paths[0] == ctx.paths[(0, 2)]
    assert jp.incoming[1] is not None and len(jp.reroutes) == 1
    j = jump_analysis(ctx, rep)
    assert j.max_length == 29 <= 2 * 20 - 3
    assert j.all_simple and j.free_section_edges == () and j.jpp_private
    assert j.passes_critical and j.passes_jpp and j.skipped == ()
    assert j.disconnecting


def test_jump_paths_require_escape_property():
    g, A, B, _ = subdivided_biclique(2, 1, 24)
    ctx = build_pair_context(g, A, B, 20, 0)
    rep = escape_analysis(ctx)
    with pytest.raises(ValueError):
        jump_paths(ctx, rep, B[0])
    with pytest.raises(ValueError):
        jump_paths(ctx, rep, 99)


def test_ambiguous_attribution_raises():
    # a chord from P_02 to P_13 points at two different b's
    specs = [(0, 2, 21), (0, 3, 21), (1, 2, 21), (1, 3, 21)]
    edges, (p, _, _, q), n = joined_paths(4, specs)
    g = Graph(n, edges + [(p[10], q[10])])
    ctx = build_pair_context(g, [0, 1], [2, 3], 20, 0)
    with pytest.raises(InvariantViolation):
        escape_analysis(ctx)


@pytest.mark.parametrize("lengths", [(21, 28, 24, 24), (22, 33, 26, 26)])
def test_single_chord_scan(lengths):
    with_escapes = 0
    for g, A, B, ell, d in chord_scan(lengths):
        res = independent_subpair(g, A, B, ell, d, 2, check_sparse=False)
        if not res.found:
            continue
        ctx = build_pair_context(g, res.a_set, res.b_set, ell, d)
        rep = escape_analysis(ctx)
        assert rep.all_acyclic and not rep.origin_conflicts and rep.matching
        assert root_section_separation(ctx) and critical_distinct(ctx)
        with_escapes += bool(rep.escapes)
    assert with_escapes >= 10


def test_escape_battery_invariants():
    pairs = escapes = 0
    for g, A, B, ell, d in escape_battery():
        res = independent_subpair(g, A, B, ell, d, min(len(A), len(B)), check_sparse=False)
        if not res.found:
            continue
        pairs += 1
        ctx = build_pair_context(g, res.a_set, res.b_set, ell, d)
        rep = escape_analysis(ctx)
        assert rep.all_acyclic and rep.origin_conflicts == ()
        assert root_section_separation(ctx)
        escapes += len(rep.escapes)
        if rep.escape_property:
            j = jump_analysis(ctx, rep)
            assert j.max_length <= 2 * ell - 3 and j.all_simple
            assert j.free_section_edges == () and j.jpp_private
            assert j.passes_critical is not False and j.passes_jpp is not False
    assert pairs >= 50 and escapes >= 40
