"""Distance-disconnecting families and the shattering certificates they yield."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

from .errors import InvariantViolation
from .graph import EdgeOrder, Graph, ball, bfs_distances, distance_matrix
from .interference import InterferenceMatrix, proper_submatrix
from .pairs import min_paths
from .verdict import PASS, Verdict, fail


@dataclass(frozen=True)
class DisconnectingFamily:
    """One vertex set ``S_ab`` per pair, meant to be the only set whose
    deletion pushes ``d(a, b)`` above ``ell``."""

    ell: int
    sets: dict  # (a, b) -> frozenset

    def __post_init__(self):
        object.__setattr__(self, "sets", {k: frozenset(v) for k, v in self.sets.items()})

    def union_except(self, key) -> frozenset[int]:
        return frozenset().union(*(s for k, s in self.sets.items() if k != key))

    def to_json(self, a_set=None, b_set=None) -> dict:
        out = {"ell": self.ell,
               "sets": [{"a": a, "b": b, "vertices": sorted(s)} for (a, b), s in sorted(self.sets.items())]}
        if a_set is not None:
            out["A"] = list(a_set)
        if b_set is not None:
            out["B"] = list(b_set)
        return out

    @classmethod
    def from_json(cls, data: dict) -> tuple["DisconnectingFamily", tuple, tuple]:
        """Returns ``(family, A, B)``; ``A``/``B`` default to the pair labels."""
        try:
            ell = int(data["ell"])
            sets = {(int(e["a"]), int(e["b"])): frozenset(int(v) for v in e["vertices"]) for e in data["sets"]}
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed family: {exc}") from None
        a_set = tuple(data.get("A") or sorted({a for a, _ in sets}))
        b_set = tuple(data.get("B") or sorted({b for _, b in sets}))
        return cls(ell, sets), a_set, b_set


def _dist(g: Graph, a: int, b: int, removed: frozenset[int]):
    return bfs_distances(g.delete(removed), a)[b]


def verify_disconnecting(g: Graph, a_set: Iterable[int], b_set: Iterable[int], ell: int,
                         fam: DisconnectingFamily) -> Verdict:
    """Check every pair with two BFS runs.

    Deleting vertices never shortens a distance, so for any subfamily ``C``:
    if ``S_ab`` is in ``C`` then ``G - U C`` is a subgraph of ``G - S_ab``, and
    if it is not then ``G - U C`` contains ``G - U(all other sets)``. Hence the
    condition over all subfamilies reduces to (i) ``d(a, b) > ell`` in
    ``G - S_ab`` and (ii) ``d(a, b) <= ell`` in ``G - U(other sets)``.
    """
    a_list, b_list = list(a_set), list(b_set)
    ends = set(a_list) | set(b_list)
    for a in a_list:
        for b in b_list:
            if (a, b) not in fam.sets:
                raise ValueError(f"family has no set for pair ({a}, {b})")
    for key, s in fam.sets.items():
        if s & ends:
            raise ValueError(f"set for pair {key} meets A u B")
        for v in s:
            g.check_vertex(v)
    for a in a_list:
        for b in b_list:
            key = (a, b)
            if _dist(g, a, b, fam.sets[key]) <= ell:
                return fail("cut", {"pair": [a, b]})
            if _dist(g, a, b, fam.union_except(key)) > ell:
                return fail("survive", {"pair": [a, b]})
    return PASS


@dataclass(frozen=True)
class ShatterCertificate:
    """``assignment[b]`` is the subset ``A_b``; deleting ``deleted`` leaves
    ``B(b, ell) n A = A - A_b`` for every ``b``, recorded in ``traces``."""

    ell: int
    a_set: tuple[int, ...]
    assignment: dict
    deleted: frozenset[int]
    traces: dict

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "A": list(self.a_set),
            "deleted": sorted(self.deleted),
            "assignment": {str(b): sorted(s) for b, s in sorted(self.assignment.items())},
            "traces": {str(b): sorted(t) for b, t in sorted(self.traces.items())},
        }


def shatter_certificate(g: Graph, a_set, b_set, ell: int, fam: DisconnectingFamily) -> ShatterCertificate:
    """Realise every subset of ``A`` as a ball trace after one global deletion.

    ``B`` (sorted) is matched to the subsets of ``A`` by bitmask; the deleted
    set is the union of ``S_ab`` over ``a in A_b``. Each trace is re-checked.
    """
    a_list, b_list = tuple(a_set), tuple(sorted(b_set))
    if len(b_list) != 2 ** len(a_list):
        raise ValueError(f"|B| must be 2^|A| = {2 ** len(a_list)}, got {len(b_list)}")
    verdict = verify_disconnecting(g, a_list, b_list, ell, fam)
    if not verdict:
        raise ValueError(f"family is not {ell}-disconnecting: {verdict.violation} {verdict.detail}")
    assignment = {b: frozenset(a for k, a in enumerate(a_list) if mask >> k & 1)
                  for mask, b in enumerate(b_list)}
    deleted = frozenset().union(*(fam.sets[(a, b)] for b in b_list for a in assignment[b]))
    h = g.delete(deleted)
    traces = {}
    for b in b_list:
        t = ball(h, b, ell) & set(a_list)
        if t != set(a_list) - assignment[b]:
            raise InvariantViolation(f"trace of B({b}, {ell}) is {sorted(t)}, expected "
                                     f"{sorted(set(a_list) - assignment[b])}")
        traces[b] = frozenset(t)
    return ShatterCertificate(ell, a_list, assignment, deleted, traces)


@dataclass(frozen=True)
class EquidistantResult:
    status: str
    a_set: tuple[int, ...] = ()
    b_set: tuple[int, ...] = ()
    family: DisconnectingFamily | None = None
    restricted: Graph | None = None


def equidistant_disconnecting(g: Graph, x: Iterable[int], r: int, q: int,
                              order: EdgeOrder | None = None, size: int | None = None,
                              mode: str = "exact", seed: int = 0) -> EquidistantResult:
    """From a set at pairwise distance ``r``, extract ``A', B'`` and midvertex
    sets that are ``r``-disconnecting in the graph of their minimum paths.

    ``size`` defaults to the largest proper submatrix available (searched
    downwards); the result is verified before being returned.
    """
    xs = sorted(set(x))
    if len(xs) < 2:
        raise ValueError("need at least two vertices")
    if r < 2 or q < 1:
        raise ValueError("need r >= 2 (midvertices must be inner path vertices) and q >= 1")
    dist = distance_matrix(g)
    for i, u in enumerate(xs):
        for v in xs[i + 1:]:
            if dist[u][v] != r:
                raise ValueError(f"d({u}, {v}) = {dist[u][v]}, expected {r}")
    half = math.ceil(r / 2)
    counts = [sum(1 for c in xs if dist[c][v] <= half) for v in range(g.n)]
    worst = max(range(g.n), key=lambda v: counts[v])
    if counts[worst] >= q:
        raise ValueError(f"vertex {worst} lies in {counts[worst]} balls of radius {half}; need fewer than {q}")
    if len(xs) % 2:
        xs = xs[:-1]
    k = len(xs) // 2
    a_set, b_set = tuple(xs[:k]), tuple(xs[k:])
    paths = min_paths(g, a_set, b_set, order)
    verts = frozenset().union(*map(set, paths.values()))
    rg = g.restrict(verts)
    rdist = {y: bfs_distances(rg, y) for y in xs}
    m = InterferenceMatrix.build(
        a_set, b_set,
        lambda a, b: {y for y in xs if y not in (a, b) and any(rdist[y][v] <= half for v in paths[(a, b)])})
    sizes = [size] if size is not None else range(k, 0, -1)
    res = None
    for n in sizes:
        res = proper_submatrix(m, n, mode=mode, seed=seed)
        if res.found:
            break
    if res is None or not res.found:
        return EquidistantResult(res.status if res is not None else "none")
    a2, b2 = res.rows, res.cols
    sub_paths = {(a, b): paths[(a, b)] for a in a2 for b in b2}
    sub_verts = frozenset().union(*map(set, sub_paths.values()))
    sg = g.restrict(sub_verts)
    mids = {key: frozenset({p[r // 2], p[half]}) for key, p in sub_paths.items()}
    fam = DisconnectingFamily(r, mids)
    verdict = verify_disconnecting(sg, a2, b2, r, fam)
    if not verdict:
        raise InvariantViolation(f"midvertex family is not {r}-disconnecting: {verdict.detail}")
    return EquidistantResult("found", a2, b2, fam, sg)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
