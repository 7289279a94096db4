"""Ball hypergraphs of graphs and the distance VC / 2VC dimensions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapExceeded
from .graph import INF, Graph, distance_matrix, induced_subgraph, is_connected
from .hypergraph import (
    VC_EXACT_CAP,
    Hypergraph,
    is_shattered,
    shattered_lower_bound,
    to_mask,
    two_vc_witness,
    vc_witness,
)

DISTANCE_VC_EXACT_CAP = 12


@dataclass(frozen=True)
class BallHypergraph:
    """A hypergraph whose edge ``i`` is the ball with label ``labels[i] = (center, radius)``."""

    hypergraph: Hypergraph
    labels: tuple[tuple[int, int], ...]
    fingerprint: str

    @property
    def n(self) -> int:
        return self.hypergraph.n

    def __len__(self) -> int:
        return len(self.hypergraph)


def b_ell(g: Graph, ell: int) -> BallHypergraph:
    """One ball of radius ``ell`` per vertex; edge ``i`` is centred at ``i``."""
    if ell < 0:
        raise ValueError("radius must be non-negative")
    dist = distance_matrix(g)
    masks = [to_mask(v for v in range(g.n) if dist[x][v] <= ell) for x in range(g.n)]
    labels = tuple((x, ell) for x in range(g.n))
    return BallHypergraph(Hypergraph(g.n, masks), labels, g.fingerprint())


def b_all(g: Graph) -> BallHypergraph:
    """All distinct balls ``B(x, k)`` with ``0 <= k <= ecc(x)``.

    Contents are deduplicated; the label kept is the first ``(center, radius)``
    in (center, radius) order. Radius-0 balls (singletons) are included.
    """
    dist = distance_matrix(g)
    seen: dict[int, tuple[int, int]] = {}
    for x in range(g.n):
        row = dist[x]
        ecc = max(d for d in row if d is not INF)
        for k in range(ecc + 1):
            m = to_mask(v for v in range(g.n) if row[v] <= k)
            seen.setdefault(m, (x, k))
    masks = list(seen)
    return BallHypergraph(Hypergraph(g.n, masks), tuple(seen[m] for m in masks), g.fingerprint())


def self_duality_check(g: Graph, ell: int) -> bool:
    """The ``B_ell`` incidence matrix ``M[u][c] = d(u, c) <= ell`` is symmetric."""
    h = b_ell(g, ell).hypergraph
    return all(((h.masks[c] >> u) & 1) == ((h.masks[u] >> c) & 1) for u in range(g.n) for c in range(g.n))


@dataclass(frozen=True)
class DistanceVCResult:
    """Value of the distance (2)VC-dimension search with a re-verifiable witness.

    ``subgraph`` lists original vertex ids of the induced subgraph whose
    B-hypergraph shatters ``shattered``. ``exact`` is False when the value is
    only a certified lower bound.
    """

    value: int
    exact: bool
    subgraph: tuple[int, ...]
    shattered: tuple[int, ...]
    mode: str
    evaluated: int = field(default=0, compare=False)


def verify_witness(g: Graph, subgraph, shattered, mode: str = "vc") -> bool:
    """Re-check that ``shattered`` is (2-)shattered by the B-hypergraph of ``g[subgraph]``."""
    sub, mapping = induced_subgraph(g, subgraph)
    index = {v: i for i, v in enumerate(mapping)}
    if any(v not in index for v in shattered):
        return False
    h = b_all(sub).hypergraph
    return is_shattered(h, [index[v] for v in shattered], "full" if mode == "vc" else "pairs")


def _subgraph_value(g: Graph, verts: tuple[int, ...], mode: str, exact: bool, seed: int
                    ) -> tuple[int, tuple[int, ...]]:
    sub, mapping = induced_subgraph(g, verts)
    h = b_all(sub).hypergraph
    kind = "full" if mode == "vc" else "pairs"
    if exact or sub.n <= VC_EXACT_CAP:
        value, wit = vc_witness(h) if mode == "vc" else two_vc_witness(h)
    else:
        value, wit = shattered_lower_bound(h, kind, budget=50, seed=seed)
    return value, tuple(mapping[i] for i in wit)


def distance_vc(g: Graph, mode: str = "vc", budget: int | None = None, seed: int = 0,
                start=None) -> DistanceVCResult:
    """Distance VC (``mode="vc"``) or distance 2VC (``mode="two_vc"``) of ``g``.

    Exact for ``n <= 12`` unless a ``budget`` is given: every connected induced
    subgraph is evaluated, together with the empty trace a second component
    can add. Otherwise a seeded hill climb deletes
    vertices from ``start`` (default: all of ``g``) and reports the best
    witness found as a lower bound.
    """
    if mode not in ("vc", "two_vc"):
        raise ValueError(f"unknown mode {mode!r}")
    if g.n == 0:
        return DistanceVCResult(-1 if mode == "vc" else 0, True, (), (), mode)
    if budget is None:
        if g.n > DISTANCE_VC_EXACT_CAP:
            raise CapExceeded(f"exact distance VC capped at n <= {DISTANCE_VC_EXACT_CAP}; pass a budget")
        return _distance_vc_exact(g, mode)
    return _distance_vc_search(g, mode, budget, seed, start)


def _distance_vc_exact(g: Graph, mode: str) -> DistanceVCResult:
    """Every connected induced subgraph ``C``, plus (VC only) ``C`` with one
    vertex that has no neighbour in ``C``.

    Shattered and 2-shattered sets live inside one component, so another
    component can only contribute the empty trace, and any vertex outside
    ``C`` with no neighbour in it supplies exactly that.
    """
    best_value, best_sub, best_wit = -2, (), ()
    evaluated = 0
    # largest subgraphs first so the size bound prunes the small ones
    for size in range(g.n, 0, -1):
        if size <= best_value:
            break
        for verts in combinations(range(g.n), size):
            if not is_connected(g, verts):
                continue
            sub = verts
            if mode == "vc":
                inside = set(verts)
                loner = next((w for w in range(g.n) if w not in inside
                              and not any(u in inside for u in g.adj[w])), None)
                if loner is not None:
                    sub = tuple(sorted(verts + (loner,)))
            value, wit = _subgraph_value(g, sub, mode, True, 0)
            evaluated += 1
            if value > best_value:
                best_value, best_sub, best_wit = value, sub, wit
    assert verify_witness(g, best_sub, best_wit, mode)
    return DistanceVCResult(best_value, True, best_sub, best_wit, mode, evaluated)


def _distance_vc_search(g: Graph, mode: str, budget: int, seed: int, start) -> DistanceVCResult:
    rng = random.Random(seed)
    current = tuple(sorted(start)) if start is not None else tuple(range(g.n))
    value, wit = _subgraph_value(g, current, mode, False, seed)
    best = (value, current, wit)
    evaluated = 1
    for step in range(budget):
        if len(current) <= 1:
            break
        victim = rng.choice(current)
        cand = tuple(v for v in current if v != victim)
        cand_value, cand_wit = _subgraph_value(g, cand, mode, False, seed + step + 1)
        evaluated += 1
        if cand_value >= value:
            current, value, wit = cand, cand_value, cand_wit
            if value > best[0]:
                best = (value, current, wit)
    if not verify_witness(g, best[1], best[2], mode):
        raise AssertionError("search produced an invalid witness")
    exact = False
    return DistanceVCResult(best[0], exact, best[1], best[2], mode, evaluated)
