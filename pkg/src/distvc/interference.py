"""Sparse and localized center sets, distance colorings, Ramsey cliques and
interference matrices with proper-submatrix extraction."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceeded
from .graph import INF, Graph, distance_matrix
from .verdict import PASS, Verdict, fail

RAMSEY_VERTEX_CAP = 128
PROPER_EXACT_CAP = 24
PROPER_COMBINATION_CAP = 2_000_000


def ball_counts(g: Graph, ell: int, centers: Iterable[int]) -> list[int]:
    """How many radius-``ell`` balls centred in ``centers`` contain each vertex."""
    dist = distance_matrix(g)
    counts = [0] * g.n
    for c in centers:
        g.check_vertex(c)
        row = dist[c]
        for v in range(g.n):
            if row[v] <= ell:
                counts[v] += 1
    return counts


def sparsity_check(g: Graph, ell: int, centers: Iterable[int], q: int) -> Verdict:
    """No vertex lies in more than ``q`` of the balls ``B(c, ell)``."""
    cs = list(centers)
    if len(set(cs)) != len(cs):
        raise ValueError("centers must be distinct")
    counts = ball_counts(g, ell, cs)
    for v, k in enumerate(counts):
        if k > q:
            return fail("sparsity", {"vertex": v, "balls": k})
    return PASS


def localized_window(ell: int, d: int) -> tuple[int, int]:
    """Allowed distance range ``[ell + 1, 2 ell - 2^(d+2) - 3]``."""
    hi = 2 * ell - 2 ** (d + 2) - 3
    if hi < ell + 1:
        raise ValueError(f"empty localization window for ell={ell}, d={d}: upper end {hi} < {ell + 1}")
    return ell + 1, hi


def localized_check(g: Graph, ell: int, d: int, a_set: Iterable[int],
                    b_set: Iterable[int] | None = None) -> Verdict:
    """Set form: all pairwise distances inside the window. Pair form: all of
    ``A u B`` pairwise at distance ``> ell`` and cross distances at most the
    upper end."""
    lo, hi = localized_window(ell, d)
    dist = distance_matrix(g)
    a = list(a_set)
    if b_set is None:
        for x, y in combinations(a, 2):
            if not lo <= dist[x][y] <= hi:
                return fail("localization", {"pair": [x, y], "distance": _num(dist[x][y])})
        return PASS
    b = list(b_set)
    if set(a) & set(b):
        raise ValueError("A and B must be disjoint")
    for x, y in combinations(a + b, 2):
        if dist[x][y] < lo:
            return fail("localization", {"pair": [x, y], "distance": _num(dist[x][y])})
    for x in a:
        for y in b:
            if dist[x][y] > hi:
                return fail("localization", {"pair": [x, y], "distance": _num(dist[x][y])})
    return PASS


def _num(x):
    return None if x is INF else x


def distance_coloring(g: Graph, x: Sequence[int], ell: int, d: int) -> tuple[list[list], int]:
    """Color every pair of ``x`` by its distance; returns ``(matrix, D + 4)``.

    With ``D = 2^(d+2) + 2``: color ``c`` when the distance is ``2 ell - c``
    for ``0 <= c <= D``, else ``D + 1`` at distance ``<= ell``, ``D + 2`` above
    ``2 ell`` (or disconnected), ``D + 3`` otherwise. Rules apply in this order.
    """
    xs = list(x)
    if len(set(xs)) != len(xs):
        raise ValueError("vertices must be distinct")
    dist = distance_matrix(g)
    big_d = 2 ** (d + 2) + 2
    k = len(xs)
    colors: list[list] = [[None] * k for _ in range(k)]
    for i, j in combinations(range(k), 2):
        dd = dist[xs[i]][xs[j]]
        if dd is not INF and 0 <= 2 * ell - dd <= big_d:
            col = 2 * ell - dd
        elif dd <= ell:
            col = big_d + 1
        elif dd > 2 * ell:
            col = big_d + 2
        else:
            col = big_d + 3
        colors[i][j] = colors[j][i] = col
    return colors, big_d + 4


@dataclass(frozen=True)
class RamseyResult:
    clique: tuple[int, ...] | None
    color: object = None

    @property
    def found(self) -> bool:
        return self.clique is not None


def ramsey_extract(colors: Sequence[Sequence], target: int) -> RamseyResult:
    """A monochromatic clique of size ``target`` in an edge-colored complete
    graph given as a symmetric matrix, or an exhaustion report (``clique=None``)."""
    if target < 2:
        raise ValueError("target must be at least 2")
    n = len(colors)
    if n > RAMSEY_VERTEX_CAP:
        raise CapExceeded(f"monochromatic clique search capped at {RAMSEY_VERTEX_CAP} vertices")
    for i in range(n):
        if len(colors[i]) != n:
            raise ValueError("coloring must be a square matrix")
        for j in range(i + 1, n):
            if colors[i][j] != colors[j][i]:
                raise ValueError(f"coloring not symmetric at ({i}, {j})")
    palette = sorted({colors[i][j] for i, j in combinations(range(n), 2)}, key=repr)
    for col in palette:
        nbr = [0] * n
        for i, j in combinations(range(n), 2):
            if colors[i][j] == col:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
        clique = _find_clique(nbr, (1 << n) - 1, target, [])
        if clique is not None:
            assert all(colors[i][j] == col for i, j in combinations(clique, 2))
            return RamseyResult(tuple(clique), col)
    return RamseyResult(None)


def _find_clique(nbr: list[int], cands: int, target: int, chosen: list[int]) -> list[int] | None:
    if len(chosen) == target:
        return list(chosen)
    while cands:
        if len(chosen) + bin(cands).count("1") < target:
            return None
        v = (cands & -cands).bit_length() - 1
        cands &= ~(1 << v)
        chosen.append(v)
        found = _find_clique(nbr, cands & nbr[v], target, chosen)
        chosen.pop()
        if found is not None:
            return found
    return None


@dataclass(frozen=True)
class InterferenceMatrix:
    """Rows ``A``, columns ``B``; ``entry(a, b)`` is a subset of ``(A u B) - {a, b}``."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: dict

    def __post_init__(self):
        if set(self.rows) & set(self.cols):
            raise ValueError("rows and columns must be disjoint")
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ValueError("repeated row or column label")
        labels = set(self.rows) | set(self.cols)
        for a in self.rows:
            for b in self.cols:
                e = self.entries.get((a, b), frozenset())
                if a in e or b in e:
                    raise ValueError(f"entry ({a}, {b}) contains its own index")
                if not e <= labels:
                    raise ValueError(f"entry ({a}, {b}) has labels outside A u B")

    @classmethod
    def build(cls, rows: Iterable[int], cols: Iterable[int], entry_fn) -> "InterferenceMatrix":
        r, c = tuple(rows), tuple(cols)
        return cls(r, c, {(a, b): frozenset(entry_fn(a, b)) for a in r for b in c})

    def entry(self, a: int, b: int) -> frozenset:
        return self.entries.get((a, b), frozenset())

    @property
    def size(self) -> int:
        return min(len(self.rows), len(self.cols))

    def interference(self) -> int:
        """Largest entry size (the least ``k`` making this a k-interference matrix)."""
        return max((len(self.entry(a, b)) for a in self.rows for b in self.cols), default=0)

    def is_proper(self) -> bool:
        return self.interference() == 0

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "InterferenceMatrix":
        r, c = tuple(rows), tuple(cols)
        if not set(r) <= set(self.rows) or not set(c) <= set(self.cols):
            raise ValueError("submatrix labels must come from the matrix")
        keep = frozenset(r) | frozenset(c)
        return InterferenceMatrix(r, c, {(a, b): self.entry(a, b) & keep for a in r for b in c})


@dataclass(frozen=True)
class SubmatrixResult:
    """``status`` is ``found``, ``none`` (exhaustive, definitive) or
    ``inconclusive`` (randomized budget spent)."""

    status: str
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()
    samples: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


def proper_submatrix(m: InterferenceMatrix, n: int, mode: str = "exact", seed: int = 0,
                     budget: int | None = None) -> SubmatrixResult:
    """An ``n x n`` submatrix whose re-intersected entries are all empty."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > len(m.rows) or n > len(m.cols):
        return SubmatrixResult("none")
    if mode == "exact":
        return _proper_exact(m, n)
    if mode == "randomized":
        return _proper_randomized(m, n, seed, budget)
    raise ValueError(f"unknown mode {mode!r}")


def _proper_exact(m: InterferenceMatrix, n: int) -> SubmatrixResult:
    if m.size > PROPER_EXACT_CAP:
        raise CapExceeded(f"exact proper-submatrix search capped at size {PROPER_EXACT_CAP}")
    if math.comb(len(m.rows), n) > PROPER_COMBINATION_CAP:
        raise CapExceeded(f"more than {PROPER_COMBINATION_CAP} row subsets to scan")
    cols = m.cols
    idx = {b: t for t, b in enumerate(cols)}
    for xs in combinations(m.rows, n):
        xset = set(xs)
        # a column survives if no row entry mentions another chosen row
        ok_cols = [b for b in cols if all(not (m.entry(a, b) & xset) for a in xs)]
        if len(ok_cols) < n:
            continue
        # columns y, y' clash when one appears in an entry of the other's column
        clash = {b: 0 for b in ok_cols}
        for b in ok_cols:
            mentioned = set().union(*(m.entry(a, b) for a in xs))
            for b2 in ok_cols:
                if b2 != b and b2 in mentioned:
                    clash[b] |= 1 << idx[b2]
                    clash[b2] |= 1 << idx[b]
        ys = _independent_columns(ok_cols, clash, idx, n)
        if ys is not None:
            sub = m.submatrix(xs, ys)
            assert sub.is_proper()
            return SubmatrixResult("found", tuple(xs), tuple(ys))
    return SubmatrixResult("none")


def _independent_columns(cands: list[int], clash: dict, idx: dict, n: int) -> tuple[int, ...] | None:
    chosen: list[int] = []

    def grow(start: int, banned: int):
        if len(chosen) == n:
            return tuple(chosen)
        for t in range(start, len(cands)):
            if len(chosen) + len(cands) - t < n:
                return None
            b = cands[t]
            if banned >> idx[b] & 1:
                continue
            chosen.append(b)
            found = grow(t + 1, banned | clash[b])
            chosen.pop()
            if found:
                return found
        return None

    return grow(0, 0)


def _proper_randomized(m: InterferenceMatrix, n: int, seed: int, budget: int | None) -> SubmatrixResult:
    rng = random.Random(seed)
    if budget is None:
        # a uniform n x n choice is proper with probability > 1 - k n^2 (n - 1) / (size - 1)
        # once the size exceeds k n^3; retries drive the failure chance down geometrically
        budget = 20_000
    rows, cols = list(m.rows), list(m.cols)
    for t in range(1, budget + 1):
        xs = tuple(sorted(rng.sample(rows, n)))
        ys = tuple(sorted(rng.sample(cols, n)))
        if m.submatrix(xs, ys).is_proper():
            return SubmatrixResult("found", xs, ys, t)
    return SubmatrixResult("inconclusive", samples=budget)
