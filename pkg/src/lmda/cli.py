"""Command line front end.

Every subcommand prints one JSON report on stdout:
``{algorithm, params, result, seed, wall_ms, assertions}``.  Vertex ids are
1-based, as in the input files.  Exit status is 0 when a result was produced,
1 when absence was proven, and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import colorcoding, oracle, reductions, treedp, twdp
from .decomposition import make_nice, parse_decomposition
from .graph import Graph, ParseError, WeightedGraph, read_graph, serialize_graph
from .kernel import (
    GLOBAL_MINIMALITY_LIMIT,
    Kind,
    check_summary,
    is_globally_minimal,
    protection_table,
)
from .ndilp import max_lmda_nd

DEFAULT_SEED = colorcoding.DEFAULT_SEED


class InputError(Exception):
    pass


def _one_based(s) -> list[int]:
    return [v + 1 for v in sorted(s)]


def _ranges(ids) -> list[list[int]]:
    """Sorted 1-based ids as inclusive [start, end] runs."""
    out: list[list[int]] = []
    for v in sorted(ids):
        if out and out[-1][1] == v:
            out[-1][1] = v + 1
        else:
            out.append([v + 1, v + 1])
    return out


def _load_graph(path: str) -> Graph:
    g = _load_any(path)
    if isinstance(g, WeightedGraph):
        return g.base
    return g


def _load_any(path: str) -> Graph | WeightedGraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_set(text: str, n: int) -> frozenset[int]:
    try:
        ids = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--set must be comma-separated integers, got {text!r}") from None
    bad = [v for v in ids if not 1 <= v <= n]
    if bad:
        raise InputError(f"--set ids out of range 1..{n}: {bad}")
    return frozenset(v - 1 for v in ids)


def _witness_checks(g, s, kind=Kind.ORDINARY, connected=False, require=True) -> dict:
    """Kernel verdicts on a witness; solver witnesses must pass all of them."""
    out = {k: bool(v) for k, v in check_summary(g, s, kind, connected).items()}
    needed = ["alliance", "locally_minimal"] + (["connected"] if connected else [])
    if require and not all(out[k] for k in needed):
        raise AssertionError(f"witness failed re-validation: {out}")
    return out


def cmd_check(args) -> tuple[dict, dict, int]:
    g = _load_graph(args.file)
    if args.set is None:
        raise InputError("check needs --set")
    s = _parse_set(args.set, g.n)
    kind = Kind(args.kind)
    summary = _witness_checks(g, s, kind, args.connected, require=False)
    result = {
        "set": _one_based(s),
        "alliance": summary["alliance"],
        "connected": summary["connected"],
        "locally_minimal": summary["locally_minimal"],
        "protection": [
            {"vertex": r.vertex + 1, "slack": r.slack, "status": r.status.value}
            for r in protection_table(g, s, kind)
        ],
    }
    if len(s) <= GLOBAL_MINIMALITY_LIMIT:
        result["globally_minimal"] = is_globally_minimal(g, s, kind)
    verdict = summary["locally_minimal"] if args.locally_minimal else summary["alliance"]
    if args.connected and not args.locally_minimal:
        verdict = verdict and summary["connected"]
    result["verdict"] = verdict
    return result, summary, 0 if verdict else 1


def cmd_oracle(args):
    g = _load_graph(args.file)
    kind = Kind(args.kind)
    try:
        if args.exact:
            if args.k is None:
                raise InputError("--exact needs --k")
            w = oracle.exists_exact(g, args.k, kind, args.connected)
            if w is None:
                return {"size": None, "witness": None}, {}, 1
            return {"size": len(w), "witness": _one_based(w)}, _witness_checks(g, w, kind, args.connected), 0
        res = oracle.max_lm_alliance(g, kind, args.connected)
    except oracle.GuardError as exc:
        raise InputError(str(exc)) from None
    if res.best_size == 0:
        return {"size": 0, "witness": None, "optimal_count": 0}, {}, 1
    w = res.witnesses[0]
    result = {"size": res.best_size, "witness": _one_based(w), "optimal_count": res.optimal_count}
    return result, _witness_checks(g, w, kind, args.connected), 0


def cmd_tree_dp(args):
    g = _load_graph(args.file)
    try:
        size, w = treedp.solve_tree(g)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if size == 0:
        return {"size": 0, "witness": None}, {}, 1
    return {"size": size, "witness": _one_based(w)}, _witness_checks(g, w, Kind.STRONG, True), 0


def cmd_color_coding(args):
    g = _load_graph(args.file)
    if args.k is None or args.k < 1:
        raise InputError("color-coding needs --k >= 1")
    try:
        policy = colorcoding.TrialPolicy(args.seed, args.max_trials)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = colorcoding.solve(g, args.k, policy)
    result = {
        "found": res.found,
        "trials_used": res.trials_used,
        # can be astronomically large, so it travels as a string
        "theoretical_trials": str(res.theoretical_trials),
    }
    checks = {}
    if res.found:
        result["witness"] = _one_based(res.witness)
        checks = _witness_checks(g, res.witness, Kind.ORDINARY, True)
    # a miss is not a proof of absence
    return result, checks, 0


def cmd_nd_ilp(args):
    g = _load_graph(args.file)
    try:
        res = max_lmda_nd(g)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result = {
        "nd": res.nd,
        "size": res.size,
        "witness": _one_based(res.witness) if res.size else None,
        "assignments_tried": res.assignments_tried,
    }
    checks = _witness_checks(g, res.witness) if res.size else {}
    return result, checks, 0 if res.size else 1


def cmd_tw_dp(args):
    g = _load_graph(args.file)
    nd = None
    if args.td:
        try:
            td = parse_decomposition(Path(args.td).read_text())
            nd = make_nice(td)
        except OSError as exc:
            raise InputError(f"{args.td}: {exc.strerror}") from None
        except ValueError as exc:
            raise InputError(f"{args.td}: {exc}") from None
    try:
        res = twdp.dp_solve(g, nd)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result = {
        "width_used": res.width_used,
        "size": res.size,
        "witness": _one_based(res.witness) if res.size else None,
        "records_peak": res.records_peak,
    }
    checks = _witness_checks(g, res.witness) if res.size else {}
    return result, checks, 0 if res.size else 1


def _sidecar(inst: reductions.AnnotatedInstance) -> dict:
    return {
        "variant": inst.variant,
        "connected": inst.connected,
        "n": inst.graph.n,
        "m": inst.graph.m,
        "k": inst.k,
        "closed_form_k": inst.closed_form_k,
        "necessary": _ranges(inst.necessary),
        "forbidden": _ranges(inst.forbidden),
        "layout": {name: _layout_entry(ids) for name, ids in sorted(inst.layout.items())},
    }


def _layout_entry(ids):
    # increasing groups compress to runs; ordered lists (pairs, edge ends) stay verbatim
    if all(a < b for a, b in zip(ids, ids[1:])):
        return _ranges(ids)
    return {"ids": [v + 1 for v in ids]}


def _layout_ids(entry) -> list[int]:
    if isinstance(entry, dict):
        return [v - 1 for v in entry["ids"]]
    return sorted(_expand(entry))


def _expand(runs) -> frozenset[int]:
    return frozenset(v - 1 for a, b in runs for v in range(a, b + 1))


def _load_annotated(path: str) -> reductions.AnnotatedInstance:
    g = _load_graph(path)
    side = Path(path + ".json")
    try:
        meta = json.loads(side.read_text())
    except OSError:
        raise InputError(f"missing sidecar {side}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{side}: {exc}") from None
    try:
        return reductions.AnnotatedInstance(
            g, int(meta["k"]), _expand(meta.get("necessary", [])), _expand(meta.get("forbidden", [])),
            meta["variant"], bool(meta.get("connected", False)),
            {name: _layout_ids(r) for name, r in meta.get("layout", {}).items()},
            meta.get("closed_form_k"),
        )
    except (KeyError, ValueError) as exc:
        raise InputError(f"{side}: {exc}") from None


def cmd_reduce(args):
    kind = args.reduction
    try:
        if kind == "mmm":
            if args.k is None:
                raise InputError("reduce mmm needs --k")
            inst = reductions.reduce_mmm_to_lmda(_load_graph(args.file), args.k)
        elif kind == "mmo":
            if args.r is None:
                raise InputError("reduce mmo needs --r")
            wg = _load_any(args.file)
            if isinstance(wg, Graph):
                wg = WeightedGraph(wg, {e: 1 for e in wg.edges()})
            inst = reductions.reduce_mmo_to_lmda_fn(wg, args.r)
        else:
            source = _load_annotated(args.file)
            step = {
                "fn2cfn": reductions.fn_to_connected_fn,
                "fn2f": reductions.fn_to_f,
                "f2exact": reductions.f_to_exact,
            }[kind]
            inst = step(source)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    side = _sidecar(inst)
    graph = inst.graph
    if not isinstance(graph, Graph):
        pendants = [{"owner": o + 1, "count": c} for o, c in zip(graph.owners, graph.counts)]
        side["pendants"] = pendants
        try:
            graph = graph.materialize()
            side["pendants_virtual"] = False
        except ValueError:
            # too large to write out: emit the core and describe the pendants
            graph = graph.core
            side["pendants_virtual"] = True
    if args.out:
        Path(args.out).write_text(serialize_graph(graph))
        Path(args.out + ".json").write_text(json.dumps(side, sort_keys=True) + "\n")
        side = {key: side[key] for key in ("variant", "connected", "n", "m", "k", "closed_form_k")}
        side["written"] = args.out
    else:
        side["edge_list"] = serialize_graph(graph)
    return side, {}, 0


COMMANDS = {
    "check": cmd_check,
    "oracle": cmd_oracle,
    "tree-dp": cmd_tree_dp,
    "color-coding": cmd_color_coding,
    "nd-ilp": cmd_nd_ilp,
    "tw-dp": cmd_tw_dp,
    "reduce": cmd_reduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=int, default=1, help="worker cap; results do not depend on it")

    p = argparse.ArgumentParser(prog="lmda", description="Locally minimal defensive alliance toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify a vertex set")
    c.add_argument("file")
    c.add_argument("--set", help="comma-separated 1-based vertex ids")
    c.add_argument("--kind", choices=[k.value for k in Kind], default="ordinary")
    c.add_argument("--connected", action="store_true")
    c.add_argument("--locally-minimal", action="store_true")

    o = sub.add_parser("oracle", parents=[common], help="exhaustive search on small graphs")
    o.add_argument("file")
    o.add_argument("--kind", choices=[k.value for k in Kind], default="ordinary")
    o.add_argument("--connected", action="store_true")
    o.add_argument("--exact", action="store_true")
    o.add_argument("--k", type=int)

    t = sub.add_parser("tree-dp", parents=[common], help="connected strong alliance on a tree")
    t.add_argument("file")

    cc = sub.add_parser("color-coding", parents=[common], help="randomized exact connected search")
    cc.add_argument("file")
    cc.add_argument("--k", type=int)
    cc.add_argument("--max-trials", type=int, default=20_000)

    nd = sub.add_parser("nd-ilp", parents=[common], help="neighbourhood diversity algorithm")
    nd.add_argument("file")

    tw = sub.add_parser("tw-dp", parents=[common], help="tree decomposition dynamic program")
    tw.add_argument("file")
    tw.add_argument("--td", help="decomposition file: 'id: v1 v2 ...' bag lines and 'id id' edges")

    r = sub.add_parser("reduce", parents=[common], help="build a reduction instance")
    r.add_argument("reduction", choices=["mmm", "mmo", "fn2cfn", "fn2f", "f2exact"])
    r.add_argument("file")
    r.add_argument("--k", type=int)
    r.add_argument("--r", type=int)
    r.add_argument("--out", help="write the edge list here and the sidecar to OUT.json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command",)}
    start = time.perf_counter()
    try:
        result, checks, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "algorithm": args.command,
        "params": params,
        "result": result,
        "seed": args.seed,
        "wall_ms": round((time.perf_counter() - start) * 1000, 3),
        "assertions": checks,
    }
    print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
