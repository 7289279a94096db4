"""Instance builders shared by the test modules."""

from __future__ import annotations

import random

from distvc.generators import chorded_biclique, gnp
from distvc.graph import Graph
from distvc.interference import localized_check
from distvc.rank import TernaryTree


def joined_paths(n_ends: int, specs):
    """Private paths between terminal pairs; ``specs`` lists ``(s, t, length)``.

    Returns the edge list, the vertex chains and the next free id.
    """
    edges, chains, nxt = [], [], n_ends
    for s, t, length in specs:
        chain = [s] + list(range(nxt, nxt + length - 1)) + [t]
        nxt += length - 1
        edges += list(zip(chain, chain[1:]))
        chains.append(chain)
    return edges, chains, nxt


def escape_gadget():
    """ell = 20, d = 0: a=0, a'=1, b=2 with one chord from RS(a) past c_a'b.

    The chord yields a single deep escape 0 -> 1.
    """
    edges, (p, q), n = joined_paths(3, [(0, 2, 21), (1, 2, 28)])
    return Graph(n, edges + [(p[15], q[22])]), [0, 1], [2]


def chord_scan(lengths, ell=20, d=0):
    """Every single-chord variant of a 2x2 subdivided biclique between paths
    ``P_02`` and ``P_12`` that keeps the pair ``d``-localized."""
    specs = [(0, 2, lengths[0]), (1, 2, lengths[1]), (0, 3, lengths[2]), (1, 3, lengths[3])]
    edges, (p, q, _, _), n = joined_paths(4, specs)
    for i in range(1, lengths[0]):
        for j in range(1, lengths[1]):
            g = Graph(n, edges + [(p[i], q[j])])
            if localized_check(g, ell, d, [0, 1], [2, 3]):
                yield g, [0, 1], [2, 3], ell, d


def random_battery(seeds=range(20)):
    """Chorded bicliques (d <= 1, ell <= 20) kept localized after each chord."""
    shapes = [(2, 1, 0, 20, (21, 30), (10, 17)), (2, 2, 0, 20, (21, 30), (10, 17)),
              (3, 2, 1, 20, (21, 25), (10, 17)), (2, 3, 0, 16, (17, 24), (6, 13))]
    for seed in seeds:
        for na, nb, d, ell, lengths, anchor in shapes:
            a_set, b_set = list(range(na)), list(range(na, na + nb))
            g, a_set, b_set = chorded_biclique(
                na, nb, lengths, chords=4, seed=seed, anchor=anchor,
                keep=lambda c, ell=ell, d=d, a=a_set, b=b_set: bool(localized_check(c, ell, d, a, b)))
            yield g, a_set, b_set, ell, d


def escape_battery():
    yield from chord_scan((21, 28, 24, 24))
    yield from chord_scan((22, 33, 26, 26))
    yield from random_battery()


def shatter_gadget(na: int, ell: int):
    """Every ``a`` joined to every ``b`` (``2^na`` of them) by a private path of
    length ``ell``; deleting the middle of ``P_ab`` cuts only that pair."""
    nb = 2 ** na
    specs = [(a, na + k, ell) for a in range(na) for k in range(nb)]
    edges, chains, n = joined_paths(na + nb, specs)
    mids = {(c[0], c[-1]): {c[len(c) // 2]} for c in chains}
    return Graph(n, edges), list(range(na)), list(range(na, na + nb)), mids


def random_family_instance(rng: random.Random):
    if rng.random() < 0.5:
        g = gnp(rng.randint(6, 9), rng.choice([0.3, 0.45]), seed=rng.randrange(10**6))
        na = rng.randint(1, 3)
        nb = rng.randint(1, min(3, 10 // na))
        ends = rng.sample(range(g.n), na + nb)
        a_set, b_set = ends[:na], ends[na:]
        inner = [v for v in range(g.n) if v not in ends]
        sets = {(a, b): frozenset(rng.sample(inner, rng.randint(0, min(3, len(inner)))))
                for a in a_set for b in b_set}
        return g, a_set, b_set, rng.randint(1, 3), sets
    # a disconnecting gadget with a few random extra edges and one perturbed set
    ell = rng.randint(2, 3)
    g, a_set, b_set, sets = shatter_gadget(rng.randint(1, 2), ell)
    b_set = b_set[:rng.randint(1, len(b_set))]
    sets = {k: frozenset(v) for k, v in sets.items() if k[1] in b_set}
    inner = list(range(len(a_set) + 2 ** len(a_set), g.n))
    extra = {tuple(sorted(rng.sample(inner, 2))) for _ in range(rng.randint(0, 2))}
    g = Graph(g.n, sorted(set(g.edges) | extra))
    if rng.random() < 0.5:
        key = rng.choice(sorted(sets))
        sets[key] = frozenset(rng.sample(inner, rng.randint(0, 2)))
    return g, a_set, b_set, ell, sets


def random_ternary_tree(leaves: int, rng: random.Random) -> TernaryTree:
    """Grow from a single edge by subdividing a random edge and hanging a leaf."""
    edges = [(0, 1)]
    num = 2
    for _ in range(leaves - 2):
        u, v = edges.pop(rng.randrange(len(edges)))
        mid, leaf = num, num + 1
        num += 2
        edges += [(u, mid), (mid, v), (mid, leaf)]
    deg = [0] * num
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    leaf_nodes = [x for x in range(num) if deg[x] == 1]
    rng.shuffle(leaf_nodes)
    return TernaryTree(num, tuple(edges), tuple(leaf_nodes))
