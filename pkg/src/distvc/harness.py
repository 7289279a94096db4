"""Packing/covering checks on ball hypergraphs and batch experiments."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator

from .balls import b_ell
from .errors import CapExceeded
from .generators import family
from .graph import Graph
from .hypergraph import VC_EXACT_CAP, packing_number, transversality, two_vc_dimension


def dsw_bound(d: int, nu: int) -> int:
    """``11 d^2 (d + nu + 3) C(d + nu, d)^2`` in exact integer arithmetic."""
    if d < 1 or nu < 0:
        raise ValueError("need d >= 1 and nu >= 0")
    return 11 * d * d * (d + nu + 3) * math.comb(d + nu, d) ** 2


@dataclass(frozen=True)
class InstanceReport:
    """Packing ``nu``, transversal ``tau`` and 2VC of the radius-``ell`` balls.

    ``bound_satisfied`` compares ``tau`` with the bound at the computed 2VC of
    this one ball layer (a lower bound on the graph's distance 2VC);
    ``dprime_satisfied`` uses an externally supplied structural upper bound.
    """

    fingerprint: str
    n: int
    m: int
    ell: int
    nu: int | None
    tau: int | None
    two_vc: int | None
    dsw: int | None
    bound_satisfied: bool | None
    dprime: int | None = None
    dsw_dprime: int | None = None
    dprime_satisfied: bool | None = None
    status: str = "ok"
    message: str | None = None
    timings: dict | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = asdict(self)
        if not timings:
            out.pop("timings")
        return out


def check_instance(g: Graph, ell: int, dprime: int | None = None, timings: bool = False,
                   two_vc_cap: int = VC_EXACT_CAP) -> InstanceReport:
    if ell < 0:
        raise ValueError("radius must be non-negative")
    if dprime is not None and dprime < 1:
        raise ValueError("dprime must be at least 1")
    h = b_ell(g, ell).hypergraph
    clock: dict[str, float] = {}
    base = dict(fingerprint=g.fingerprint(), n=g.n, m=g.m, ell=ell, dprime=dprime)
    try:
        t0 = time.perf_counter()
        nu = len(packing_number(h))
        t1 = time.perf_counter()
        tau = len(transversality(h))
        t2 = time.perf_counter()
        two_vc = two_vc_dimension(h, two_vc_cap)
        t3 = time.perf_counter()
    except CapExceeded as exc:
        return InstanceReport(nu=None, tau=None, two_vc=None, dsw=None, bound_satisfied=None,
                              status="cap_exceeded", message=str(exc), **base)
    clock = {"packing": t1 - t0, "transversal": t2 - t1, "two_vc": t3 - t2}
    if tau < nu:
        raise AssertionError(f"transversal {tau} below packing {nu}")
    dsw = dsw_bound(max(two_vc, 1), nu)
    dsw_dp = dsw_bound(dprime, nu) if dprime is not None else None
    return InstanceReport(
        nu=nu, tau=tau, two_vc=two_vc, dsw=dsw, bound_satisfied=tau <= dsw,
        dsw_dprime=dsw_dp, dprime_satisfied=None if dsw_dp is None else tau <= dsw_dp,
        timings=clock if timings else None, **base)


def _expand(config: dict) -> list[dict]:
    """Config entries to one job per (family, params, seed, radius), in config order."""
    jobs = []
    for entry in config.get("instances", []):
        kind = entry["family"]
        params_list = entry.get("params", [{}])
        if isinstance(params_list, dict):
            params_list = [params_list]
        for params in params_list:
            for seed in entry.get("seeds", [0]):
                for ell in entry.get("radii", [1]):
                    jobs.append({"family": kind, "params": params, "seed": seed, "ell": ell,
                                 "dprime": entry.get("dprime")})
    return jobs


def _run_job(job: dict, timings: bool = False) -> dict:
    head = {"family": job["family"], "params": job["params"], "seed": job["seed"]}
    try:
        g = family(job["family"], job["params"], job["seed"])
        rep = check_instance(g, job["ell"], job["dprime"], timings)
    except (ValueError, KeyError, TypeError) as exc:
        return {**head, "ell": job["ell"], "status": "error", "message": str(exc)}
    return {**head, **rep.to_json(timings)}


def run_experiments(config: dict, workers: int = 1) -> Iterator[str]:
    """Yield one JSON line per instance (config order), then a summary line."""
    jobs = _expand(config)
    timings = bool(config.get("timings", False))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows: Iterable[dict] = list(pool.map(_run_job, jobs, [timings] * len(jobs)))
    else:
        rows = (_run_job(j, timings) for j in jobs)
    summary = {"summary": True, "instances": 0, "errors": 0, "cap_exceeded": 0,
               "bound_violations": 0, "dprime_violations": 0}
    for row in rows:
        summary["instances"] += 1
        if row.get("status") == "error":
            summary["errors"] += 1
        elif row.get("status") == "cap_exceeded":
            summary["cap_exceeded"] += 1
        else:
            summary["bound_violations"] += row["bound_satisfied"] is False
            summary["dprime_violations"] += row["dprime_satisfied"] is False
        yield json.dumps(row, sort_keys=True)
    yield json.dumps(summary, sort_keys=True)
