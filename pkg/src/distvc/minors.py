"""Clique minors from 2-shattered sets, and verification of minor models."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .graph import INF, EdgeOrder, Graph, distance_matrix, is_path, lex_min_path
from .verdict import PASS, Verdict, fail


@dataclass(frozen=True)
class PairWitness:
    """Ball ``B(center, radius)`` whose trace on the set is ``{x_i, x_j}``.

    ``radius`` is minimal over all centers (ties go to the smallest center id)
    and ``path`` runs from ``x_i`` through ``center`` to ``x_j``.
    """

    i: int
    j: int
    xi: int
    xj: int
    center: int
    radius: int
    path: tuple[int, ...]


@dataclass(frozen=True)
class MinorModel:
    """Branch sets realising a pattern graph (complete by default)."""

    pattern_size: int
    branch_sets: tuple[frozenset[int], ...]
    pattern_edges: tuple[tuple[int, int], ...] | None = field(default=None)

    def edges(self) -> list[tuple[int, int]]:
        if self.pattern_edges is not None:
            return list(self.pattern_edges)
        return list(combinations(range(self.pattern_size), 2))

    def to_json(self) -> dict:
        out = {"pattern_size": self.pattern_size,
               "branch_sets": [sorted(s) for s in self.branch_sets]}
        if self.pattern_edges is not None:
            out["pattern_edges"] = [list(e) for e in self.pattern_edges]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MinorModel":
        try:
            size = int(data["pattern_size"])
            sets = tuple(frozenset(int(v) for v in s) for s in data["branch_sets"])
            edges = data.get("pattern_edges")
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed minor model: {exc}") from None
        if len(sets) != size:
            raise ValueError(f"{len(sets)} branch sets for a pattern of size {size}")
        pe = None if edges is None else tuple((int(u), int(v)) for u, v in edges)
        return cls(size, sets, pe)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _pair_witness(dist, xs: Sequence[int], i: int, j: int) -> tuple[int, int] | None:
    xi, xj = xs[i], xs[j]
    others = [x for k, x in enumerate(xs) if k not in (i, j)]
    best = None
    for c in range(len(dist)):
        row = dist[c]
        r = max(row[xi], row[xj])
        if r is INF:
            continue
        if all(row[x] > r for x in others):
            if best is None or r < best[1]:
                best = (c, r)
    return best


def _central_path(g: Graph, xi: int, c: int, xj: int, order: EdgeOrder | None) -> tuple[int, ...]:
    first = lex_min_path(g, xi, c, order)
    second = lex_min_path(g, c, xj, order)
    return first + second[1:]


def find_pair_witnesses(g: Graph, x: Iterable[int], order: EdgeOrder | None = None
                        ) -> dict[tuple[int, int], PairWitness | None]:
    """Minimal-radius witness for every pair of ``x``; ``None`` marks a pair no
    ball traces exactly. Keys are index pairs ``(i, j)``, ``i < j``, into ``x``."""
    xs = tuple(x)
    if len(xs) < 2:
        raise ValueError("need at least two vertices")
    if len(set(xs)) != len(xs):
        raise ValueError("vertices must be distinct")
    for v in xs:
        g.check_vertex(v)
    dist = distance_matrix(g)
    out: dict[tuple[int, int], PairWitness | None] = {}
    for i, j in combinations(range(len(xs)), 2):
        found = _pair_witness(dist, xs, i, j)
        if found is None:
            out[(i, j)] = None
            continue
        c, r = found
        path = _central_path(g, xs[i], c, xs[j], order)
        if not is_path(g, path):
            _refute_repeat(g, dist, xs, i, j, c, r, path)
        out[(i, j)] = PairWitness(i, j, xs[i], xs[j], c, r, path)
    return out


def _refute_repeat(g, dist, xs, i, j, c, r, path) -> None:
    """A central path that revisits a vertex can be folded so both neighbours
    of the center coincide; that neighbour is a witness of radius ``r - 1``,
    which the minimal scan would have found. Re-check and report."""
    k = path.index(c)
    v = path[k - 1] if k > 0 else path[k + 1]
    others = [x for t, x in enumerate(xs) if t not in (i, j)]
    row = dist[v]
    smaller = max(row[xs[i]], row[xs[j]]) <= r - 1 and all(row[x] > r - 1 for x in others)
    raise InvariantViolation(
        f"central path for pair {(i, j)} is not simple; folded witness ({v}, {r - 1}) "
        f"{'is valid, so the radius was not minimal' if smaller else 'is not valid either'}")


def extract_clique_minor(g: Graph, x: Iterable[int], witnesses: dict) -> MinorModel:
    """Split every central path at its middle: vertices closer to ``x_i`` join
    ``X_i``, those closer to ``x_j`` join ``X_j``, a tie goes to the lower index."""
    xs = tuple(x)
    k = len(xs)
    missing = [p for p in combinations(range(k), 2) if witnesses.get(p) is None]
    if missing:
        raise ValueError(f"no witness for pairs {missing}")
    dist = distance_matrix(g)
    sets: list[set[int]] = [{v} for v in xs]
    for (i, j), w in sorted(witnesses.items()):
        for v in w.path:
            di, dj = dist[v][xs[i]], dist[v][xs[j]]
            sets[i if di <= dj else j].add(v)
    model = MinorModel(k, tuple(frozenset(s) for s in sets))
    verdict = verify_minor_model(g, model)
    if not verdict:
        raise InvariantViolation(f"extracted model fails {verdict.violation}: {verdict.detail}")
    return model


def _connected(g: Graph, s: frozenset[int]) -> bool:
    start = min(s)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in s and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(s)


def verify_minor_model(g: Graph, m: MinorModel) -> Verdict:
    """Disjointness, then connectivity of each branch set, then one ``g``-edge
    per pattern edge."""
    if len(m.branch_sets) != m.pattern_size:
        raise ValueError("one branch set per pattern vertex required")
    for s in m.branch_sets:
        for v in s:
            g.check_vertex(v)
    owner: dict[int, int] = {}
    for i, s in enumerate(m.branch_sets):
        for v in s:
            if v in owner:
                return fail("disjointness", {"vertex": v, "sets": [owner[v], i]})
            owner[v] = i
    for i, s in enumerate(m.branch_sets):
        if not s or not _connected(g, s):
            return fail("connectivity", {"set": i})
    for i, j in m.edges():
        if i == j or not (0 <= i < m.pattern_size and 0 <= j < m.pattern_size):
            raise ValueError(f"bad pattern edge ({i}, {j})")
        si, sj = m.branch_sets[i], m.branch_sets[j]
        if not any(w in sj for u in si for w in g.adj[u]):
            return fail("pattern-edge", {"edge": [i, j]})
    return PASS


def shared_vertex_check(g: Graph, witnesses: dict) -> Verdict:
    """A vertex on two central paths must lie on ``P_ij`` and ``P_il`` and be
    strictly closer to the shared end ``x_i`` on both."""
    dist = distance_matrix(g)
    on: dict[int, list[PairWitness]] = {}
    for w in witnesses.values():
        if w is not None:
            for v in w.path:
                on.setdefault(v, []).append(w)
    for v, ws in sorted(on.items()):
        for p, q in combinations(ws, 2):
            common = {p.xi, p.xj} & {q.xi, q.xj}
            if len(common) != 1:
                return fail("shared-endpoint", {"vertex": v, "pairs": [[p.i, p.j], [q.i, q.j]]})
            (c,) = common
            far_p = p.xj if p.xi == c else p.xi
            far_q = q.xj if q.xi == c else q.xi
            if not (dist[v][c] < dist[v][far_p] and dist[v][c] < dist[v][far_q]):
                return fail("strictly-closer", {"vertex": v, "pairs": [[p.i, p.j], [q.i, q.j]]})
    return PASS
