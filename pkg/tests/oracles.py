"""Brute-force reference implementations. Slow, obvious, independent of the package internals."""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations

INF = float("inf")


def random_graph(n: int, p: float, rng: random.Random) -> tuple[int, list[tuple[int, int]]]:
    return n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def floyd_warshall(n, edges):
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def all_shortest_paths(n, edges, x, z):
    """Every shortest x-z path as a vertex tuple."""
    adj = adjacency(n, edges)
    d = floyd_warshall(n, edges)
    if d[x][z] == INF:
        return []
    out = []

    def walk(path):
        u = path[-1]
        if u == z:
            out.append(tuple(path))
            return
        for w in adj[u]:
            if d[w][z] == d[u][z] - 1:
                walk(path + [w])

    walk([x])
    return out


def lex_min_by_reversed_edges(paths, rank):
    """Minimum path when edge sequences are compared from the last edge back."""

    def key(p):
        es = [rank[(min(a, b), max(a, b))] for a, b in zip(p, p[1:])]
        return es[::-1]

    return min(paths, key=key)


def balls(n, edges, ell):
    d = floyd_warshall(n, edges)
    return [frozenset(v for v in range(n) if d[c][v] <= ell) for c in range(n)]


def trace(edges, x):
    x = frozenset(x)
    return {frozenset(e) & x for e in edges}


def shattered(edges, x):
    return len(trace(edges, x)) == 2 ** len(x)


def two_shattered(edges, x):
    tr = trace(edges, x)
    return all(frozenset(p) in tr for p in combinations(x, 2))


def vc(n, edges):
    if not edges:
        return -1
    best = 0
    for k in range(n + 1):
        if any(shattered(edges, x) for x in combinations(range(n), k)):
            best = k
    return best


def two_vc(n, edges):
    best = 1 if n else 0
    for k in range(2, n + 1):
        if any(two_shattered(edges, x) for x in combinations(range(n), k)):
            best = k
    return best


def tau(n, edges):
    for k in range(n + 1):
        for s in combinations(range(n), k):
            s = set(s)
            if all(s & set(e) for e in edges):
                return k
    return None


def nu(edges):
    edges = [frozenset(e) for e in edges]
    for k in range(len(edges), 0, -1):
        for fam in combinations(range(len(edges)), k):
            if all(not (edges[i] & edges[j]) for i, j in combinations(fam, 2)):
                return k
    return 0


def pq_holds(n, edges, p, q):
    for fam in combinations(range(len(edges)), p):
        if all(sum(v in edges[i] for i in fam) < q for v in range(n)):
            return False
    return True


def gf2_rank_bruteforce(rows):
    """Rank as log2 of the size of the row span, by enumerating all subsets."""
    span = set()
    for k in range(len(rows) + 1):
        for sub in combinations(rows, k):
            acc = 0
            for r in sub:
                acc ^= r
            span.add(acc)
    return len(span).bit_length() - 1


def distance_after_delete(n, edges, a, b, removed):
    removed = set(removed)
    adj = adjacency(n, [(u, v) for u, v in edges if u not in removed and v not in removed])
    seen = {a: 0}
    q = deque([a])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in seen:
                seen[w] = seen[u] + 1
                q.append(w)
    return seen.get(b, INF)


def disconnecting_oracle(n, edges, a_set, b_set, ell, sets):
    """Quantify over every subfamily C: d(a,b) > ell in G - U C iff S_ab in C."""
    keys = sorted(sets)
    for k in range(len(keys) + 1):
        for chosen in combinations(keys, k):
            removed = set().union(*(sets[c] for c in chosen))
            for a in a_set:
                for b in b_set:
                    far = distance_after_delete(n, edges, a, b, removed) > ell
                    if far != ((a, b) in chosen):
                        return False
    return True


def connected(adj, s):
    s = set(s)
    if not s:
        return False
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == s


def minor_model_ok(n, edges, branch_sets, pattern_edges):
    adj = adjacency(n, edges)
    sets = [set(b) for b in branch_sets]
    for i, j in combinations(range(len(sets)), 2):
        if sets[i] & sets[j]:
            return False
    if not all(connected(adj, s) for s in sets):
        return False
    for i, j in pattern_edges:
        if not any(v in adj[u] for u in sets[i] for v in sets[j]):
            return False
    return True


def cross_quads(edges, p1, p2):
    """All (u1, v1, u2, v2) with edges v1u2, u1v2 distinct, u_i at or before v_i
    on path i, v1 != v2, and not both edges taken from a single path."""
    es = {(min(a, b), max(a, b)) for a, b in edges}
    own1 = {(min(a, b), max(a, b)) for a, b in zip(p1, p1[1:])}
    own2 = {(min(a, b), max(a, b)) for a, b in zip(p2, p2[1:])}
    out = set()
    for i1, u1 in enumerate(p1):
        for v1 in p1[i1:]:
            for i2, u2 in enumerate(p2):
                for v2 in p2[i2:]:
                    e1 = (min(v1, u2), max(v1, u2))
                    e2 = (min(u1, v2), max(u1, v2))
                    if v1 == v2 or e1 == e2 or e1 not in es or e2 not in es:
                        continue
                    if {e1, e2} <= own1 or {e1, e2} <= own2:
                        continue
                    out.add((u1, v1, u2, v2))
    return out


def all_balls(n, edges):
    """Every ball B(x, k) of every radius, deduplicated."""
    d = floyd_warshall(n, edges)
    return {frozenset(v for v in range(n) if d[x][v] <= k) for x in range(n) for k in range(n)}


def distance_vc(n, edges, mode="vc"):
    """Maximum over all induced subgraphs (connected or not) of the B-hypergraph (2)VC."""
    best = -1 if mode == "vc" else 0
    for k in range(1, n + 1):
        for keep in combinations(range(n), k):
            idx = {v: i for i, v in enumerate(keep)}
            sub = [(idx[u], idx[v]) for u, v in edges if u in idx and v in idx]
            fam = list(all_balls(k, sub))
            best = max(best, vc(k, fam) if mode == "vc" else two_vc(k, fam))
    return best
