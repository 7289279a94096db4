"""Finite hypergraphs on int bitsets: shattering, VC/2VC, duality, hitting sets, packings."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import CapExceeded, Infeasible

VC_EXACT_CAP = 24
SOLVER_VERTEX_CAP = 64
SOLVER_EDGE_CAP = 512
PQ_EDGE_CAP = 512


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def _bits(mask: int) -> list[int]:
    return sorted(from_mask(mask))


class Hypergraph:
    """Vertex count plus an indexed family of hyperedges.

    Edges are kept as int bitmasks in ``masks``; duplicate contents are allowed
    and keep distinct indices. ``labels`` optionally tags each edge (ball
    hypergraphs store ``(center, radius)`` there).
    """

    __slots__ = ("n", "masks", "labels")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = (), labels: Sequence | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        masks = []
        full = (1 << n) - 1
        for e in edges:
            m = e if isinstance(e, int) else to_mask(e)
            if m < 0 or m & ~full:
                raise ValueError(f"hyperedge {sorted(from_mask(m)) if m >= 0 else e} not within 0..{n - 1}")
            masks.append(m)
        self.n = n
        self.masks: tuple[int, ...] = tuple(masks)
        if labels is not None and len(labels) != len(self.masks):
            raise ValueError("one label per edge required")
        self.labels = tuple(labels) if labels is not None else None

    def __len__(self) -> int:
        return len(self.masks)

    def edge(self, i: int) -> frozenset[int]:
        return from_mask(self.masks[i])

    def edges(self) -> list[frozenset[int]]:
        return [from_mask(m) for m in self.masks]

    def distinct_masks(self) -> list[int]:
        return sorted(set(self.masks))

    def check_vertices(self, xs: Iterable[int]) -> int:
        mask = 0
        for v in xs:
            if not (isinstance(v, int) and 0 <= v < self.n):
                raise ValueError(f"invalid vertex {v!r} (n={self.n})")
            mask |= 1 << v
        return mask

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hypergraph) and self.n == other.n and self.masks == other.masks

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={len(self.masks)})"


def trace(h: Hypergraph, x: Iterable[int]) -> frozenset[frozenset[int]]:
    """Distinct intersections ``e & x`` over all hyperedges ``e``."""
    xm = h.check_vertices(x)
    return frozenset(from_mask(e & xm) for e in set(h.masks))


def _trace_masks(masks: Iterable[int], xm: int) -> set[int]:
    return {e & xm for e in masks}


def _full_ok(masks, xm: int, size: int) -> bool:
    return len(_trace_masks(masks, xm)) == 1 << size


def _pairs_ok(masks, xm: int, size: int) -> bool:
    if size < 2:
        return True
    traces = _trace_masks(masks, xm)
    bits = _bits(xm)
    return all((1 << u) | (1 << v) in traces for u, v in combinations(bits, 2))


_CHECKS = {"full": _full_ok, "pairs": _pairs_ok}


def is_shattered(h: Hypergraph, x: Iterable[int], mode: str = "full") -> bool:
    """``full``: every subset of ``x`` is a trace. ``pairs``: every 2-subset is."""
    if mode not in _CHECKS:
        raise ValueError(f"unknown mode {mode!r}")
    xm = h.check_vertices(x)
    return _CHECKS[mode](set(h.masks), xm, bin(xm).count("1"))


def _max_shattered(h: Hypergraph, mode: str, cap: int) -> tuple[int, tuple[int, ...]]:
    if h.n > cap:
        raise CapExceeded(f"exhaustive {mode} shattering search capped at |V| <= {cap}, got {h.n}")
    masks = h.distinct_masks()
    ok = _CHECKS[mode]
    if mode == "full":
        # a shattered set of size k needs 2^k distinct edges
        ceiling = len(masks).bit_length() - 1 if masks else -1
        # a vertex in no edge or in every edge is never in a shattered set
        union = inter = 0
        if masks:
            inter = masks[0]
            for e in masks:
                union |= e
                inter &= e
        verts = [v for v in range(h.n) if (union >> v) & 1 and not (inter >> v) & 1]
    else:
        ceiling = h.n
        verts = list(range(h.n))

    best: list = [0, ()]

    def grow(chosen: list[int], xm: int, cands: list[int]) -> None:
        if len(chosen) > best[0]:
            best[0], best[1] = len(chosen), tuple(chosen)
            if best[0] >= ceiling:
                return
        for i, v in enumerate(cands):
            if len(chosen) + len(cands) - i <= best[0] or best[0] >= ceiling:
                return
            ym = xm | (1 << v)
            if not ok(masks, ym, len(chosen) + 1):
                continue
            nxt = [w for w in cands[i + 1:] if ok(masks, ym | (1 << w), len(chosen) + 2)]
            if len(chosen) + 1 + len(nxt) <= best[0]:
                continue
            chosen.append(v)
            grow(chosen, ym, nxt)
            chosen.pop()

    singles = [v for v in verts if ok(masks, 1 << v, 1)]
    grow([], 0, singles)
    return best[0], best[1]


def vc_dimension(h: Hypergraph, cap: int = VC_EXACT_CAP) -> int:
    """Exact VC-dimension; ``-1`` when there are no edges."""
    return vc_witness(h, cap)[0]


def vc_witness(h: Hypergraph, cap: int = VC_EXACT_CAP) -> tuple[int, tuple[int, ...]]:
    if not h.masks:
        return -1, ()
    return _max_shattered(h, "full", cap)


def two_vc_dimension(h: Hypergraph, cap: int = VC_EXACT_CAP) -> int:
    """Exact 2VC-dimension; singletons count as 2-shattered, so this is 1 for
    any non-empty vertex set (0 when ``V`` is empty)."""
    return two_vc_witness(h, cap)[0]


def two_vc_witness(h: Hypergraph, cap: int = VC_EXACT_CAP) -> tuple[int, tuple[int, ...]]:
    if h.n == 0:
        return 0, ()
    return _max_shattered(h, "pairs", cap)


def shattered_lower_bound(h: Hypergraph, mode: str = "full", budget: int = 200, seed: int = 0
                          ) -> tuple[int, tuple[int, ...]]:
    """Randomised greedy growth of shattered sets, for instances above the exact cap.

    The result is only a lower bound; the witness is re-checked before returning.
    """
    if mode == "full" and not h.masks:
        return -1, ()
    if h.n == 0:
        return 0, ()
    masks = h.distinct_masks()
    ok = _CHECKS[mode]
    rng = random.Random(seed)
    order = list(range(h.n))
    best: tuple[int, ...] = ()
    for _ in range(budget):
        rng.shuffle(order)
        chosen: list[int] = []
        xm = 0
        for v in order:
            ym = xm | (1 << v)
            if ok(masks, ym, len(chosen) + 1):
                chosen.append(v)
                xm = ym
        if len(chosen) > len(best):
            best = tuple(sorted(chosen))
    assert is_shattered(h, best, mode)
    return len(best), best


def dual(h: Hypergraph) -> Hypergraph:
    """Vertices become edge indices; vertex ``v`` yields the edge ``{i : v in e_i}``."""
    edges = []
    for v in range(h.n):
        bit = 1 << v
        edges.append(to_mask(i for i, e in enumerate(h.masks) if e & bit))
    return Hypergraph(len(h.masks), edges)


def incidence_matrix(h: Hypergraph) -> list[list[int]]:
    """Rows are vertices, columns are edge indices."""
    return [[(e >> v) & 1 for e in h.masks] for v in range(h.n)]


def _check_solver_caps(h: Hypergraph) -> None:
    if h.n > SOLVER_VERTEX_CAP or len(h.masks) > SOLVER_EDGE_CAP:
        raise CapExceeded(
            f"exact solvers capped at |V| <= {SOLVER_VERTEX_CAP}, |F| <= {SOLVER_EDGE_CAP}; "
            f"got |V|={h.n}, |F|={len(h.masks)}")


def _minimal_edges(masks: Iterable[int]) -> list[int]:
    """Distinct edges that contain no other edge."""
    distinct = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    kept: list[int] = []
    for e in distinct:
        if not any(f & e == f for f in kept):
            kept.append(e)
    return kept


def _greedy_hitting(masks: list[int]) -> list[int]:
    uncovered = list(masks)
    chosen = []
    while uncovered:
        counts: dict[int, int] = {}
        for e in uncovered:
            for v in _bits(e):
                counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda x: (-counts[x], x))
        chosen.append(v)
        uncovered = [e for e in uncovered if not (e >> v) & 1]
    return chosen


def _disjoint_count(masks: list[int]) -> int:
    used = 0
    count = 0
    for e in sorted(masks, key=lambda m: bin(m).count("1")):
        if not e & used:
            used |= e
            count += 1
    return count


def transversality(h: Hypergraph, mode: str = "exact") -> frozenset[int]:
    """A minimum (``exact``) or greedy hitting set of ``h``."""
    if any(e == 0 for e in h.masks):
        raise Infeasible("an empty hyperedge cannot be hit")
    if mode == "greedy":
        return frozenset(_greedy_hitting(list(h.masks)))
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    _check_solver_caps(h)
    edges = _minimal_edges(h.masks)
    best = [_greedy_hitting(edges)]

    def solve(uncovered: list[int], chosen: list[int]) -> None:
        if not uncovered:
            if len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        if any(e == 0 for e in uncovered):
            return
        if len(chosen) + _disjoint_count(uncovered) >= len(best[0]):
            return
        pivot = min(uncovered, key=lambda m: (bin(m).count("1"), m))
        degree = {v: sum(1 for e in uncovered if (e >> v) & 1) for v in _bits(pivot)}
        forbidden = 0
        for v in sorted(degree, key=lambda x: (-degree[x], x)):
            rest = [e & ~forbidden for e in uncovered if not (e >> v) & 1]
            chosen.append(v)
            solve(rest, chosen)
            chosen.pop()
            forbidden |= 1 << v

    solve(edges, [])
    return frozenset(best[0])


def packing_number(h: Hypergraph, mode: str = "exact") -> tuple[int, ...]:
    """Indices of a maximum (``exact``) or maximal (``greedy``) set of pairwise
    disjoint hyperedges. Empty hyperedges are disjoint from everything and are
    always included."""
    empties = [i for i, e in enumerate(h.masks) if e == 0]
    if mode == "greedy":
        used = 0
        chosen = list(empties)
        for i in sorted(range(len(h.masks)), key=lambda i: (bin(h.masks[i]).count("1"), i)):
            e = h.masks[i]
            if e and not e & used:
                used |= e
                chosen.append(i)
        return tuple(sorted(chosen))
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    _check_solver_caps(h)
    first_index: dict[int, int] = {}
    for i, e in enumerate(h.masks):
        if e:
            first_index.setdefault(e, i)
    # an edge containing another edge can always be swapped for the smaller one
    edges = _minimal_edges(first_index)
    k = len(edges)
    conflict = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if edges[i] & edges[j]:
                conflict[i] |= 1 << j
                conflict[j] |= 1 << i
    best: list = [[]]

    def solve(cands: int, chosen: list[int]) -> None:
        if not cands:
            if len(chosen) > len(best[0]):
                best[0] = list(chosen)
            return
        if len(chosen) + _independent_bound(cands, conflict) <= len(best[0]):
            return
        # branch on the candidate with most conflicts: take it, or drop it
        v = max(_bits(cands), key=lambda x: (bin(conflict[x] & cands).count("1"), -x))
        chosen.append(v)
        solve(cands & ~conflict[v] & ~(1 << v), chosen)
        chosen.pop()
        solve(cands & ~(1 << v), chosen)

    solve((1 << k) - 1, [])
    return tuple(sorted(empties + [first_index[edges[i]] for i in best[0]]))


def _independent_bound(cands: int, conflict: list[int]) -> int:
    """Greedy clique cover size of the conflict graph: an upper bound on the
    number of pairwise disjoint edges among ``cands``."""
    rest = cands
    cliques = 0
    while rest:
        v = (rest & -rest).bit_length() - 1
        clique = 1 << v
        pool = rest & conflict[v]
        while pool:
            w = (pool & -pool).bit_length() - 1
            clique |= 1 << w
            pool &= conflict[w]
        rest &= ~clique
        cliques += 1
    return cliques


class PQResult(NamedTuple):
    holds: bool
    counterexample: tuple[int, ...] | None


def pq_property(h: Hypergraph, p: int, q: int) -> PQResult:
    """Whether among every ``p`` hyperedges some ``q`` share a vertex.

    A counterexample is ``p`` edge indices no vertex of which lies in ``q`` of
    them, i.e. a ``(q-1)``-sparse subfamily.
    """
    if not (p >= q >= 1):
        raise ValueError("need p >= q >= 1")
    k = len(h.masks)
    if k < p:
        return PQResult(True, None)
    if k > PQ_EDGE_CAP:
        raise CapExceeded(f"(p,q) search capped at |F| <= {PQ_EDGE_CAP}")
    masks = h.masks
    everything = (1 << h.n) - 1

    def search(start: int, chosen: list[int], levels: list[int]):
        if len(chosen) == p:
            return tuple(chosen)
        for i in range(start, k - (p - len(chosen)) + 1):
            e = masks[i]
            saturated = levels[q - 2] if q >= 2 else everything
            if e & saturated:
                continue
            new = list(levels)
            for c in range(q - 2, 0, -1):
                new[c] |= new[c - 1] & e
            if q >= 2:
                new[0] |= e
            chosen.append(i)
            found = search(i + 1, chosen, new)
            chosen.pop()
            if found:
                return found
        return None

    found = search(0, [], [0] * max(q - 1, 1))
    if found is None:
        return PQResult(True, None)
    for v in range(h.n):
        assert sum((masks[i] >> v) & 1 for i in found) < q
    return PQResult(False, found)


def to_text(h: Hypergraph) -> str:
    lines = [f"h {h.n} {len(h.masks)}"]
    lines += ["s " + " ".join(map(str, _bits(e))) if e else "s" for e in h.masks]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Hypergraph:
    n = k = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "h" and len(parts) == 3:
                if n is not None:
                    raise ValueError("duplicate header")
                n, k = int(parts[1]), int(parts[2])
            elif parts[0] == "s":
                if n is None:
                    raise ValueError("edge before header")
                edges.append([int(x) for x in parts[1:]])
            else:
                raise ValueError(f"unrecognised line {raw!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ValueError("missing 'h <n> <k>' header")
    if len(edges) != k:
        raise ValueError(f"header announces {k} edges, found {len(edges)}")
    return Hypergraph(n, edges)
