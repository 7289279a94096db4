"""Minimum paths between two vertex sets: critical vertices, independent pairs,
root sections, escapes and jump paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from itertools import combinations
from typing import Iterable

from .errors import InvariantViolation
from .graph import INF, EdgeOrder, Graph, ball, distance_matrix, lex_min_path_tree, path_from
from .interference import (
    InterferenceMatrix,
    SubmatrixResult,
    localized_check,
    proper_submatrix,
    sparsity_check,
)
from .verdict import PASS, Verdict, fail

PATH_ENUM_CAP = 1_000_000


def min_paths(g: Graph, a_set: Iterable[int], b_set: Iterable[int],
              order: EdgeOrder | None = None) -> dict[tuple[int, int], tuple[int, ...]]:
    """Lexicographically minimum ``ab``-path for every ``(a, b)``; ``P[0] == a``."""
    out = {}
    a_list = list(a_set)
    for b in b_set:
        succ = lex_min_path_tree(g, b, order)
        for a in a_list:
            out[(a, b)] = path_from(succ, a, b)
    return out


def critical_vertices(paths: dict, ell: int) -> tuple[dict, dict, dict]:
    """``(c_ab, c_ba, c-_ab)``: vertices of ``P_ab`` at distance ``ell - 3`` from
    ``a``, ``ell - 3`` from ``b`` and ``ell - 4`` from ``a``."""
    crit, crit_b, pre = {}, {}, {}
    for (a, b), p in paths.items():
        if len(p) - 1 < ell - 3 or ell < 4:
            raise ValueError(f"pair ({a}, {b}): path of length {len(p) - 1} has no critical vertex for ell={ell}")
        crit[(a, b)] = p[ell - 3]
        crit_b[(a, b)] = p[len(p) - 1 - (ell - 3)]
        pre[(a, b)] = p[ell - 4]
    return crit, crit_b, pre


def is_independent(g: Graph, a_set: Iterable[int], b_set: Iterable[int], ell: int,
                   order: EdgeOrder | None = None) -> Verdict:
    """Both critical balls of every pair trace exactly ``{a, b}`` on ``A u B``."""
    a_list, b_list = list(a_set), list(b_set)
    ab = set(a_list) | set(b_list)
    paths = min_paths(g, a_list, b_list, order)
    crit, crit_b, _ = critical_vertices(paths, ell)
    for (a, b) in paths:
        for c in (crit[(a, b)], crit_b[(a, b)]):
            trace = ball(g, c, ell) & ab
            if trace != {a, b}:
                return fail("independence", {"pair": [a, b], "center": c, "trace": sorted(trace)})
    return PASS


def interference_from_criticals(g: Graph, a_set, b_set, ell: int,
                                order: EdgeOrder | None = None) -> InterferenceMatrix:
    """``m(a, b) = (I(c_ab) u I(c_ba)) - {a, b}`` with ``I(u) = B(u, ell) n (A u B)``."""
    a_list, b_list = tuple(a_set), tuple(b_set)
    ab = frozenset(a_list) | frozenset(b_list)
    paths = min_paths(g, a_list, b_list, order)
    crit, crit_b, _ = critical_vertices(paths, ell)
    return InterferenceMatrix.build(
        a_list, b_list,
        lambda a, b: ((ball(g, crit[(a, b)], ell) | ball(g, crit_b[(a, b)], ell)) & ab) - {a, b})


@dataclass(frozen=True)
class IndependentResult:
    status: str
    a_set: tuple[int, ...] = ()
    b_set: tuple[int, ...] = ()
    matrix: InterferenceMatrix | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def independent_subpair(g: Graph, a_set, b_set, ell: int, d: int, p: int,
                        order: EdgeOrder | None = None, check_sparse: bool = True,
                        mode: str = "exact", seed: int = 0) -> IndependentResult:
    """An independent subpair of size ``p`` via a proper submatrix of the
    critical-ball interference matrix.

    ``check_sparse=False`` skips the ``d``-sparsity precondition (sparsity and
    localization cannot hold together for ``d <= 1``); the output is checked
    for independence directly either way.
    """
    a_list, b_list = tuple(a_set), tuple(b_set)
    loc = localized_check(g, ell, d, a_list, b_list)
    if not loc:
        raise ValueError(f"pair is not {d}-localized: {loc.detail}")
    if check_sparse:
        sp = sparsity_check(g, ell, a_list + b_list, d)
        if not sp:
            raise ValueError(f"pair is not {d}-sparse: {sp.detail}")
    m = interference_from_criticals(g, a_list, b_list, ell, order)
    res: SubmatrixResult = proper_submatrix(m, p, mode=mode, seed=seed)
    if not res.found:
        return IndependentResult(res.status, matrix=m)
    verdict = is_independent(g, res.rows, res.cols, ell, order)
    if not verdict:
        raise InvariantViolation(f"proper submatrix is not an independent pair: {verdict.detail}")
    return IndependentResult("found", res.rows, res.cols, m)


@dataclass(frozen=True)
class PairContext:
    """Minimum ``AB``-paths of the original graph and the sections they define.

    ``restricted`` keeps the original vertex ids but only the edges induced by
    the path vertices ``vertices``.
    """

    graph: Graph
    a_set: tuple[int, ...]
    b_set: tuple[int, ...]
    ell: int
    d: int
    order: EdgeOrder | None
    paths: dict
    restricted: Graph
    vertices: frozenset[int]
    crit: dict
    crit_b: dict
    pre: dict
    rs_a: dict
    rs_b: dict
    position: dict = field(repr=False)

    def rs_all(self) -> frozenset[int]:
        return frozenset().union(*self.rs_a.values())

    def on_paths(self, v: int) -> list[tuple[int, int]]:
        return self.position.get(v, [])


def build_pair_context(g: Graph, a_set, b_set, ell: int, d: int,
                       order: EdgeOrder | None = None) -> PairContext:
    if ell < 4:
        raise ValueError("ell must be at least 4")
    a_list, b_list = tuple(a_set), tuple(b_set)
    if not a_list or not b_list or set(a_list) & set(b_list):
        raise ValueError("A and B must be non-empty and disjoint")
    dist = distance_matrix(g)
    bad = [(a, b, dist[a][b]) for a in a_list for b in b_list
           if not (ell < dist[a][b] <= 2 * ell - 7)]
    if bad:
        a, b, dd = bad[0]
        raise ValueError(f"pair ({a}, {b}) at distance {None if dd is INF else dd} "
                         f"outside ({ell}, {2 * ell - 7}]")
    paths = min_paths(g, a_list, b_list, order)
    crit, crit_b, pre = critical_vertices(paths, ell)
    rs_a = {a: set() for a in a_list}
    rs_b = {b: set() for b in b_list}
    position: dict[int, list] = {}
    verts: set[int] = set()
    for (a, b), p in paths.items():
        rs_a[a].update(p[: ell - 2])
        rs_b[b].update(p[len(p) - 1 - (ell - 3):])
        verts.update(p)
        for v in p:
            position.setdefault(v, []).append((a, b))
    rs_a = {a: frozenset(s) for a, s in rs_a.items()}
    rs_b = {b: frozenset(s) for b, s in rs_b.items()}
    covered = frozenset().union(*rs_a.values(), *rs_b.values())
    assert covered == verts, "every path vertex lies in a root section"
    return PairContext(g, a_list, b_list, ell, d, order, paths, g.restrict(verts),
                       frozenset(verts), crit, crit_b, pre, rs_a, rs_b, position)


def set_distance(g: Graph, s: Iterable[int], t: Iterable[int]):
    """Smallest distance between a vertex of ``s`` and a vertex of ``t``."""
    targets = set(t)
    dist = {v: 0 for v in s}
    queue = deque(dist)
    while queue:
        u = queue.popleft()
        if u in targets:
            return dist[u]
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return INF


def root_section_separation(ctx: PairContext) -> Verdict:
    """Root sections of distinct ``A``-vertices (and of distinct ``B``-vertices)
    are at distance at least 4 in the original graph."""
    for side in (ctx.rs_a, ctx.rs_b):
        for x, y in combinations(sorted(side), 2):
            dd = set_distance(ctx.graph, side[x], side[y])
            if dd < 4:
                return fail("root-section-distance", {"pair": [x, y], "distance": dd})
    return PASS


def critical_distinct(ctx: PairContext) -> Verdict:
    """``c_ab != c_ab'`` and ``c-_ab != c-_ab'`` whenever ``b != b'``."""
    for a in ctx.a_set:
        for b, b2 in combinations(ctx.b_set, 2):
            if ctx.crit[(a, b)] == ctx.crit[(a, b2)] or ctx.pre[(a, b)] == ctx.pre[(a, b2)]:
                return fail("critical-distinct", {"a": a, "b": [b, b2]})
    return PASS


def leaving_edges_matching(ctx: PairContext) -> Verdict:
    """Edges of the ``aB``-paths leaving ``RS(a)`` form an induced matching."""
    r = ctx.restricted
    for a in ctx.a_set:
        rs = ctx.rs_a[a]
        leaving = set()
        for b in ctx.b_set:
            p = ctx.paths[(a, b)]
            for x, y in zip(p, p[1:]):
                if (x in rs) != (y in rs):
                    leaving.add((x, y) if x < y else (y, x))
        edges = sorted(leaving)
        for e, f in combinations(edges, 2):
            if set(e) & set(f):
                return fail("matching", {"a": a, "edges": [list(e), list(f)]})
            if any(r.has_edge(x, y) for x in e for y in f):
                return fail("induced", {"a": a, "edges": [list(e), list(f)]})
    return PASS


@dataclass(frozen=True)
class Escape:
    """Edge ``uv`` leaving ``RS(source)`` that is no ``source``-path edge,
    attributed to ``target`` and ``b`` through the path holding ``v``."""

    source: int
    target: int
    b: int
    u: int
    v: int
    deep: bool


@dataclass(frozen=True)
class EscapeReport:
    escapes: tuple[Escape, ...]
    arcs: dict
    deep_arcs: dict
    acyclic: dict
    escape_property: bool
    origin_conflicts: tuple[int, ...]
    matching: Verdict

    @property
    def all_acyclic(self) -> bool:
        return all(self.acyclic.values())

    def to_json(self) -> dict:
        return {
            "escapes": [[e.source, e.target, e.b, e.u, e.v, e.deep] for e in self.escapes],
            "arcs": {str(b): sorted(map(list, s)) for b, s in sorted(self.arcs.items())},
            "deep_arcs": {str(b): sorted(map(list, s)) for b, s in sorted(self.deep_arcs.items())},
            "acyclic": {str(b): v for b, v in sorted(self.acyclic.items())},
            "escape_property": self.escape_property,
            "origin_conflicts": list(self.origin_conflicts),
            "matching": self.matching.to_json(),
        }


def _acyclic(nodes, arcs) -> bool:
    ts = TopologicalSorter({v: set() for v in nodes})
    for x, y in arcs:
        ts.add(y, x)
    try:
        tuple(ts.static_order())
    except CycleError:
        return False
    return True


def _transitive_tournament(nodes, arcs) -> bool:
    nodes = list(nodes)
    for x, y in combinations(nodes, 2):
        if ((x, y) in arcs) == ((y, x) in arcs):
            return False
    return _acyclic(nodes, arcs)


def escape_analysis(ctx: PairContext) -> EscapeReport:
    """Find every escape, attribute it to a target and a ``b``, and build the
    per-``b`` escape digraphs.

    Attribution relies on independence: the ``b`` of every path through ``u``
    (within ``RS(a)``) and through ``v`` must be one and the same, and ``v``
    must avoid the ``a``-paths. Anything else raises ``InvariantViolation``.
    """
    r = ctx.restricted
    path_edges = {a: set() for a in ctx.a_set}
    for (a, b), p in ctx.paths.items():
        for x, y in zip(p, p[1:]):
            path_edges[a].add((x, y) if x < y else (y, x))
    critical = {}
    for (a, b) in ctx.paths:
        critical.setdefault(a, set()).update((ctx.crit[(a, b)], ctx.pre[(a, b)]))
    rs_all = ctx.rs_all()
    escapes = []
    for a in ctx.a_set:
        rs = ctx.rs_a[a]
        for u in sorted(rs):
            for v in r.adj[u]:
                if v in rs or ((u, v) if u < v else (v, u)) in path_edges[a]:
                    continue
                u_bs = {b for (a2, b) in ctx.on_paths(u) if a2 == a}
                v_pairs = ctx.on_paths(v)
                bs = u_bs | {b for _, b in v_pairs}
                if len(bs) != 1 or any(a2 == a for a2, _ in v_pairs):
                    raise InvariantViolation(
                        f"escape ({u}, {v}) from {a} has no unique attribution "
                        f"(u on {sorted(u_bs)}, v on {sorted(v_pairs)})")
                (b,) = bs
                deep = u not in critical[a]
                for a2, _ in sorted(v_pairs):
                    escapes.append(Escape(a, a2, b, u, v, deep))
    # every vertex outside RS(A) has neighbours in at most one root section
    conflicts = []
    owner = {v: a for a in ctx.a_set for v in ctx.rs_a[a]}
    for x in sorted(ctx.vertices - rs_all):
        origins = {owner[w] for w in r.adj[x] if w in owner}
        if len(origins) > 1:
            conflicts.append(x)
    arcs = {b: set() for b in ctx.b_set}
    deep_arcs = {b: set() for b in ctx.b_set}
    for e in escapes:
        arcs[e.b].add((e.source, e.target))
        if e.deep:
            deep_arcs[e.b].add((e.source, e.target))
    acyclic = {b: _acyclic(ctx.a_set, arcs[b]) for b in ctx.b_set}
    prop = all(_transitive_tournament(ctx.a_set, deep_arcs[b]) for b in ctx.b_set)
    return EscapeReport(
        tuple(escapes),
        {b: frozenset(s) for b, s in arcs.items()},
        {b: frozenset(s) for b, s in deep_arcs.items()},
        acyclic, prop, tuple(conflicts), leaving_edges_matching(ctx))


@dataclass(frozen=True)
class JumpPaths:
    """Jump paths towards one ``b``; ``order`` lists ``A`` along the escapes."""

    b: int
    order: tuple[int, ...]
    paths: dict
    incoming: dict
    reroutes: tuple[tuple[int, int, int, int], ...]  # (a_i, u_i, v_i, a_j)
    free_sections: dict


def jump_paths(ctx: PairContext, report: EscapeReport, b: int) -> JumpPaths:
    """Reroute each minimum path at its incoming vertex through a first-in
    escape onto an earlier jump path."""
    if b not in ctx.b_set:
        raise ValueError(f"{b} is not in B")
    if not _transitive_tournament(ctx.a_set, report.deep_arcs[b]):
        raise ValueError(f"escape property fails for b={b}")
    ts = TopologicalSorter({a: set() for a in ctx.a_set})
    for x, y in sorted(report.arcs[b]):
        ts.add(y, x)
    order = tuple(ts.static_order())
    rank = {a: i for i, a in enumerate(order)}
    into: dict[int, list[Escape]] = {}
    for e in report.escapes:
        if e.b == b:
            into.setdefault(e.target, []).append(e)
    paths, incoming, fsec, reroutes = {}, {}, {}, []
    for a in order:
        p = ctx.paths[(a, b)]
        ends = {e.v for e in into.get(a, [])}
        pos = next((k for k, v in enumerate(p) if v in ends), None)
        start = ctx.ell - 2  # first vertex after the critical one
        if pos is None:
            paths[a] = p
            incoming[a] = None
            fsec[a] = p[start:]
            continue
        v = p[pos]
        first_in = min((e for e in into[a] if e.v == v), key=lambda e: (e.u, e.source))
        src = first_in.source
        if rank[src] >= rank[a]:
            raise InvariantViolation(f"first-in escape into {a} comes from a later vertex {src}")
        prev = paths[src]
        if first_in.u not in prev:
            raise InvariantViolation(f"escape start {first_in.u} is not on the jump path of {src}")
        tail = prev[prev.index(first_in.u):]
        paths[a] = p[: pos + 1] + tail
        incoming[a] = v
        fsec[a] = p[start: pos + 1]
        reroutes.append((a, first_in.u, v, src))
    return JumpPaths(b, order, paths, incoming, tuple(reroutes), fsec)


@dataclass(frozen=True)
class JumpReport:
    jumps: dict
    jpp: dict
    max_length: int
    all_simple: bool
    free_section_edges: tuple[tuple[int, int], ...]
    jpp_private: bool
    passes_critical: bool | None
    passes_jpp: bool | None
    skipped: tuple[tuple[int, int], ...]
    disconnecting: Verdict | None

    def to_json(self) -> dict:
        return {
            "max_length": self.max_length,
            "all_simple": self.all_simple,
            "free_section_edges": [list(e) for e in self.free_section_edges],
            "jpp_private": self.jpp_private,
            "passes_critical": self.passes_critical,
            "passes_jpp": self.passes_jpp,
            "skipped": [list(p) for p in self.skipped],
            "disconnecting": None if self.disconnecting is None else self.disconnecting.to_json(),
            "jump_paths": {f"{a},{b}": list(jp.paths[a])
                           for b, jp in sorted(self.jumps.items()) for a in sorted(jp.paths)},
        }


def bounded_paths(g: Graph, s: int, t: int, max_len: int, cap: int = PATH_ENUM_CAP):
    """All simple ``s``-``t`` paths with at most ``max_len`` edges, or ``None``
    once more than ``cap`` have been produced."""
    dist_t = _bfs(g, t)
    out: list[tuple[int, ...]] = []
    path = [s]
    on = {s}

    def walk(u: int) -> bool:
        if u == t:
            out.append(tuple(path))
            return len(out) <= cap
        for w in g.adj[u]:
            if w in on or len(path) + dist_t.get(w, max_len + 1) > max_len + 1:
                continue
            path.append(w)
            on.add(w)
            ok = walk(w)
            path.pop()
            on.discard(w)
            if not ok:
                return False
        return True

    if dist_t.get(s, max_len + 1) > max_len:
        return []
    return out if walk(s) else None


def _bfs(g: Graph, s: int) -> dict[int, int]:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def jump_analysis(ctx: PairContext, report: EscapeReport, check_paths: bool = True,
                  cap: int = PATH_ENUM_CAP) -> JumpReport:
    """Jump paths for every ``b`` plus the checks made on them: length, free
    sections with no edge between them, private parts, and (optionally) that
    every short ``ab``-path in the jump-path graph meets ``c_ab`` and ``JPP(a, b)``."""
    from .disconnect import DisconnectingFamily, verify_disconnecting

    jumps = {b: jump_paths(ctx, report, b) for b in ctx.b_set}
    all_paths = {(a, b): jp.paths[a] for b, jp in jumps.items() for a in ctx.a_set}
    count: dict[int, int] = {}
    for p in all_paths.values():
        for v in set(p):
            count[v] = count.get(v, 0) + 1
    # endpoints are excluded so a single-b instance does not count a as private
    ends = set(ctx.a_set) | set(ctx.b_set)
    jpp = {k: frozenset(v for v in p if count[v] == 1 and v not in ends) for k, p in all_paths.items()}
    max_len = max(len(p) - 1 for p in all_paths.values())
    simple = all(len(set(p)) == len(p) for p in all_paths.values())
    private = all(jpp[k] <= set(all_paths[k]) for k in jpp) and all(
        not (jpp[k] & jpp[k2]) for k, k2 in combinations(sorted(jpp), 2))

    sections = [(k, frozenset(jumps[k[1]].free_sections[k[0]])) for k in sorted(all_paths)]
    holder: dict[int, set] = {}
    for k, s in sections:
        for v in s:
            holder.setdefault(v, set()).add(k)
    bad_edges = []
    for x, y in ctx.restricted.edges:
        hx, hy = holder.get(x), holder.get(y)
        if hx and hy and not (hx & hy):
            bad_edges.append((x, y))

    two_l3 = 2 * ctx.ell - 3
    jverts = set().union(*map(set, all_paths.values()))
    jg = ctx.graph.restrict(jverts)
    passes_c = passes_j = None
    skipped = []
    if check_paths:
        passes_c = passes_j = True
        for (a, b) in sorted(all_paths):
            found = bounded_paths(jg, a, b, two_l3, cap)
            if found is None:
                skipped.append((a, b))
                continue
            c = ctx.crit[(a, b)]
            for p in found:
                if c not in p:
                    passes_c = False
                if not jpp[(a, b)] & set(p):
                    passes_j = False
    disc = None
    if max_len <= two_l3:
        fam = DisconnectingFamily(two_l3, dict(jpp))
        disc = verify_disconnecting(jg, ctx.a_set, ctx.b_set, two_l3, fam)
    return JumpReport(jumps, jpp, max_len, simple, tuple(bad_edges), private,
                      passes_c, passes_j, tuple(skipped), disc)
