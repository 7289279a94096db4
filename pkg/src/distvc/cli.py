"""Command-line interface. Output is JSON (sorted keys) or the native text formats.

Exit codes: 0 success, 1 a property or verification failed, 2 bad input,
3 an exact solver cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators, rank
from .balls import b_all, b_ell, distance_vc
from .disconnect import DisconnectingFamily, shatter_certificate, verify_disconnecting
from .errors import CapExceeded, InvariantViolation
from .graph import Graph
from .graph import from_text as graph_from_text
from .graph import to_text as graph_to_text
from .harness import check_instance, run_experiments
from .hypergraph import Hypergraph
from .hypergraph import from_text as hyper_from_text
from .hypergraph import (
    packing_number,
    to_text as hyper_to_text,
    transversality,
    two_vc_witness,
    vc_witness,
)
from .minors import extract_clique_minor, find_pair_witnesses
from .pairs import build_pair_context, escape_analysis, is_independent, root_section_separation

OK, FAILED, BAD_INPUT, CAPPED = 0, 1, 2, 3


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load(path: str) -> Graph | Hypergraph:
    text = _read(path)
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return hyper_from_text(text) if line.startswith("h ") else graph_from_text(text)
    raise ValueError(f"{path}: empty input")


def _load_graph(path: str) -> Graph:
    obj = _load(path)
    if not isinstance(obj, Graph):
        raise ValueError(f"{path}: expected a graph file")
    return obj


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _params(pairs: list[str]) -> dict:
    out = {}
    for p in pairs or []:
        key, sep, value = p.partition("=")
        if not sep:
            raise ValueError(f"parameter {p!r} is not key=value")
        out[key] = value
    return out


def cmd_gen(args) -> int:
    params = _params(args.param)
    labels = None
    tree = None
    if args.kind == "gnl":
        gg = generators.gnl(int(params.get("n", 4)), int(params.get("ell", 2)))
        text, labels = graph_to_text(gg.graph), gg.labels()
    elif args.kind == "cograph":
        recipe = json.loads(params["recipe"]) if "recipe" in params else \
            generators.random_cograph_recipe(int(params.get("n", 8)), args.seed)
        g, tree = generators.cograph_with_tree(recipe)
        text, labels = graph_to_text(g), {"recipe": recipe}
    elif args.kind == "pairs":
        text = hyper_to_text(generators.pairs_hypergraph(int(params.get("n", 5))))
    else:
        text = graph_to_text(generators.family(args.kind, params, args.seed))
    sys.stdout.write(text)
    if args.labels:
        Path(args.labels).write_text(json.dumps(labels or {}, sort_keys=True) + "\n")
    if args.tree:
        if tree is None:
            raise ValueError("--tree is only available for cographs")
        Path(args.tree).write_text(rank.to_text(tree))
    return OK


def _hypergraph_for(obj, radius) -> Hypergraph:
    if isinstance(obj, Hypergraph):
        return obj
    return (b_ell(obj, radius) if radius is not None else b_all(obj)).hypergraph


def cmd_vc(args) -> int:
    obj = _load(args.input)
    if args.mode == "distance":
        if not isinstance(obj, Graph):
            raise ValueError("distance mode needs a graph")
        res = distance_vc(obj, "two_vc" if args.two else "vc", budget=args.budget, seed=args.seed)
        _emit({"mode": res.mode, "value": res.value, "exact": res.exact,
               "subgraph": list(res.subgraph), "shattered": list(res.shattered)})
        return OK
    h = _hypergraph_for(obj, args.radius)
    value, wit = vc_witness(h) if args.mode == "vc" else two_vc_witness(h)
    _emit({"mode": args.mode, "value": value, "witness": list(wit)})
    return OK


def cmd_domset(args) -> int:
    g = _load_graph(args.input)
    h = b_ell(g, args.radius).hypergraph
    chosen = transversality(h, "greedy" if args.greedy else "exact")
    _emit({"radius": args.radius, "exact": not args.greedy, "size": len(chosen), "set": sorted(chosen)})
    return OK


def cmd_pack(args) -> int:
    obj = _load(args.input)
    if isinstance(obj, Graph) and args.radius is None:
        raise ValueError("--radius is required for graph input")
    h = _hypergraph_for(obj, args.radius)
    chosen = packing_number(h, "greedy" if args.greedy else "exact")
    _emit({"exact": not args.greedy, "size": len(chosen), "edges": list(chosen)})
    return OK


def cmd_bound_check(args) -> int:
    g = _load_graph(args.input)
    rep = check_instance(g, args.radius, args.dprime)
    _emit(rep.to_json())
    if rep.status == "cap_exceeded":
        return CAPPED
    bad = rep.bound_satisfied is False or rep.dprime_satisfied is False
    return FAILED if bad else OK


def cmd_extract_minor(args) -> int:
    g = _load_graph(args.input)
    xs = _int_list(args.set)
    wit = find_pair_witnesses(g, xs)
    missing = [[xs[i], xs[j]] for (i, j), w in sorted(wit.items()) if w is None]
    if missing:
        _emit({"ok": False, "unrealised_pairs": missing})
        return FAILED
    model = extract_clique_minor(g, xs, wit)
    _emit({"ok": True, "model": model.to_json(),
           "witnesses": [{"pair": [w.xi, w.xj], "center": w.center, "radius": w.radius, "path": list(w.path)}
                         for _, w in sorted(wit.items())]})
    return OK


def cmd_rank_verify(args) -> int:
    g = _load_graph(args.input)
    t = rank.from_text(_read(args.tree))
    t.validate(g.n)
    cuts = [rank.cutrank(g, *t.split(e)) for e in t.edges]
    w = max(cuts, default=0)
    _emit({"width": w, "cutranks": cuts})
    return FAILED if args.max_width is not None and w > args.max_width else OK


def cmd_disconnect_verify(args) -> int:
    g = _load_graph(args.input)
    fam, a_set, b_set = DisconnectingFamily.from_json(json.loads(_read(args.family)))
    verdict = verify_disconnecting(g, a_set, b_set, fam.ell, fam)
    out = {"verdict": verdict.to_json()}
    if verdict and args.certificate:
        out["certificate"] = shatter_certificate(g, a_set, b_set, fam.ell, fam).to_json()
    _emit(out)
    return OK if verdict else FAILED


def cmd_escape_audit(args) -> int:
    g = _load_graph(args.input)
    a_set, b_set = _int_list(args.a), _int_list(args.b)
    ctx = build_pair_context(g, a_set, b_set, args.radius, args.d)
    indep = is_independent(g, a_set, b_set, args.radius)
    out = {"independent": indep.to_json()}
    if not indep:
        _emit(out)
        return FAILED
    report = escape_analysis(ctx)
    sep = root_section_separation(ctx)
    out.update(report.to_json())
    out["root_sections_separated"] = sep.to_json()
    _emit(out)
    good = report.all_acyclic and not report.origin_conflicts and bool(sep) and bool(report.matching)
    return OK if good else FAILED


def cmd_experiment(args) -> int:
    config = json.loads(_read(args.config))
    violations = 0
    for line in run_experiments(config, workers=args.workers):
        sys.stdout.write(line + "\n")
        row = json.loads(line)
        if row.get("summary"):
            violations = row["bound_violations"] + row["dprime_violations"]
    return FAILED if violations else OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="distvc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a generated graph or hypergraph")
    p.add_argument("kind", choices=["gnl", "cograph", "pairs", "grid", "path", "cycle", "clique",
                                    "complete_bipartite", "gnp"])
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", help="write a JSON sidecar of vertex labels here")
    p.add_argument("--tree", help="write the width-1 tree of a cograph here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("vc", help="VC / 2VC of a hypergraph, ball hypergraph or distance VC of a graph")
    p.add_argument("input")
    p.add_argument("--mode", choices=["vc", "2vc", "distance"], default="vc")
    p.add_argument("--radius", type=int, help="use the radius-ell balls of a graph (default: all radii)")
    p.add_argument("--two", action="store_true", help="distance mode: 2-shattering instead of shattering")
    p.add_argument("--budget", type=int, help="distance mode: heuristic steps instead of exact search")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_vc)

    p = sub.add_parser("domset", help="distance-ell dominating set (hitting set of the balls)")
    p.add_argument("input")
    p.add_argument("--radius", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True)
    g.add_argument("--greedy", action="store_true")
    p.set_defaults(func=cmd_domset)

    p = sub.add_parser("pack", help="maximum set of pairwise disjoint hyperedges / balls")
    p.add_argument("input")
    p.add_argument("--radius", type=int)
    p.add_argument("--greedy", action="store_true")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("bound-check", help="packing/covering numbers against the closed-form bound")
    p.add_argument("input")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dprime", type=int)
    p.set_defaults(func=cmd_bound_check)

    p = sub.add_parser("extract-minor", help="clique minor from a 2-shattered set")
    p.add_argument("input")
    p.add_argument("--set", required=True, metavar="V1,V2,...")
    p.set_defaults(func=cmd_extract_minor)

    p = sub.add_parser("rank-verify", help="width of a given tree-representation")
    p.add_argument("input")
    p.add_argument("--tree", required=True)
    p.add_argument("--max-width", type=int)
    p.set_defaults(func=cmd_rank_verify)

    p = sub.add_parser("disconnect-verify", help="check a disconnecting family (JSON)")
    p.add_argument("input")
    p.add_argument("--family", required=True)
    p.add_argument("--certificate", action="store_true", help="also emit the shattering certificate")
    p.set_defaults(func=cmd_disconnect_verify)

    p = sub.add_parser("escape-audit", help="root sections and escapes of an independent pair")
    p.add_argument("input")
    p.add_argument("--a", required=True, metavar="V1,V2,...")
    p.add_argument("--b", required=True, metavar="V1,V2,...")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--d", type=int, default=0)
    p.set_defaults(func=cmd_escape_audit)

    p = sub.add_parser("experiment", help="run a JSON experiment config, JSON lines out")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"distvc: solver cap exceeded: {exc}", file=sys.stderr)
        return CAPPED
    except InvariantViolation as exc:
        print(f"distvc: verification failed: {exc}", file=sys.stderr)
        return FAILED
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"distvc: bad input: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
