"""Command-line surface: recognize basic classes, decide balanced skew
partitions, list 2-joins, build and validate reduction gadgets, and check a
user-supplied partition.  Verdicts live in the output; exit codes only
report failure classes (0 ok, 2 input error, 3 budget or guard, 4 violated
precondition)."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .graphcore import Budget, Graph, GraphError, parse_grf, set_of
from .recognize import is_basic, is_berge_bruteforce
from .partition import (
    bruteforce_skew_partition,
    verify_balanced,
    verify_skew_partition,
)
from .twojoin import bruteforce_2join_oracle, find_nonpath_proper_2join, find_path_2joins
from .decompose import detect_bsp_berge, tree_to_dot, tree_to_json
from .gadget import (
    CALIBRATED_CONVENTION,
    augment_prime,
    build_bienstock,
    cross_validate,
    layout_to_grf,
    parse_dimacs,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_PRECONDITION = 4


def _config_echo(args) -> dict:
    return {
        "budget": args.budget,
        "guard": args.guard,
        "seed": args.seed,
        "format": args.format,
    }


def _emit_json(payload: dict, args) -> None:
    payload = {"tool": "bergekit", "version": __version__, "config": _config_echo(args), **payload}
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    g, warnings = parse_grf(text)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return g


def _split_payload(split, cls) -> dict:
    return {
        "split": split.sorted_sets(),
        "connected": cls.connected,
        "substantial": cls.substantial,
        "proper": cls.proper,
        "path_side": cls.path_side,
        "parity": cls.parity,
        "degenerate_items": list(cls.degenerate_items),
        "cutting1": cls.cutting1,
    }


def cmd_recognize(args) -> int:
    g = _load_graph(args.graph)
    verdict = is_basic(g, Budget(args.budget))
    if args.format == "json":
        payload = {"class": verdict.klass, "complete": verdict.complete}
        if verdict.klass == "double_split":
            payload["m"] = verdict.witness.m
            payload["n"] = verdict.witness.n
        _emit_json(payload, args)
    else:
        extra = ""
        if verdict.klass == "double_split":
            extra = f" m={verdict.witness.m} n={verdict.witness.n}"
        print(f"{verdict.klass}{extra}")
    return EXIT_OK


def cmd_bsp(args) -> int:
    g = _load_graph(args.graph)
    bud = Budget(args.budget)
    if args.verify_berge:
        chk = is_berge_bruteforce(g, bud)
        if chk.berge is False:
            print(
                f"not Berge: {chk.witness_kind} ({len(chk.witness)})", file=sys.stderr
            )
            return EXIT_PRECONDITION
        if chk.berge is None:
            print("Berge verification exhausted its budget", file=sys.stderr)
            return EXIT_BUDGET
    if args.oracle:
        if g.n > args.guard:
            print(f"oracle guard: n={g.n} > {args.guard}", file=sys.stderr)
            return EXIT_BUDGET
        got = bruteforce_skew_partition(g, require_balanced=True, size_guard=args.guard, budget=bud)
        verdict = got is not None
        if args.format == "json":
            payload = {"verdict": "YES" if verdict else "NO", "mode": "oracle"}
            if got:
                payload["cutset"] = sorted(got.B)
            _emit_json(payload, args)
        else:
            print("YES" if verdict else "NO")
        return EXIT_OK
    res = detect_bsp_berge(g, budget=bud)
    if args.format == "json":
        _emit_json(
            {
                "verdict": "YES" if res.answer else "NO",
                "mode": "decomposition",
                "leaves": [
                    {"label": v.node.label, "n": v.node.graph.n, "how": v.how, "answer": v.answer}
                    for v in res.leaf_verdicts
                ],
                "tree": json.loads(tree_to_json(res.tree)),
            },
            args,
        )
    elif args.format == "dot":
        print(tree_to_dot(res.tree), end="")
    else:
        print("YES" if res.answer else "NO")
        for v in res.leaf_verdicts:
            print(f"  leaf {v.node.label:16s} n={v.node.graph.n:3d} -> {'YES' if v.answer else 'NO'} ({v.how})")
    return EXIT_OK


def cmd_twojoin(args) -> int:
    g = _load_graph(args.graph)
    results = []
    if args.mode == "nonpath":
        got = find_nonpath_proper_2join(g)
        if got:
            results.append(got)
    elif args.mode == "path":
        results = find_path_2joins(g)
    else:
        if g.n > args.guard:
            print(f"oracle guard: n={g.n} > {args.guard}", file=sys.stderr)
            return EXIT_BUDGET
        results = bruteforce_2join_oracle(g, size_guard=args.guard)
    if args.format == "json":
        _emit_json(
            {"mode": args.mode, "count": len(results), "splits": [_split_payload(s, c) for s, c in results]},
            args,
        )
    else:
        print(f"{len(results)} 2-join(s)")
        for s, c in results:
            flags = []
            if c.proper:
                flags.append("proper")
            if c.path_side != "none":
                flags.append(f"path:{c.path_side}")
            if c.degenerate_items:
                flags.append(f"degenerate{list(c.degenerate_items)}")
            print(f"  X1={sorted(s.X1)} X2={sorted(s.X2)} parity={c.parity} {' '.join(flags)}")
    return EXIT_OK


def cmd_gadget(args) -> int:
    with open(args.cnf, "r", encoding="ascii") as fh:
        inst = parse_dimacs(fh.read())
    if args.validate:
        rep = cross_validate(inst, budget=Budget(args.budget))
        if args.format == "json":
            _emit_json(
                {
                    "sat": rep.sat,
                    "odd_path": rep.odd_path,
                    "bsp_gprime": rep.bsp_gprime,
                    "convention": rep.convention,
                    "legs_ok": rep.legs_ok,
                    "cutset_checks": rep.cutset_checks,
                    "audit_problems": rep.audit_problems,
                },
                args,
            )
        else:
            print(
                f"sat={rep.sat} odd_path={rep.odd_path} bsp_gprime={rep.bsp_gprime} "
                f"legs_ok={rep.legs_ok}"
            )
        return EXIT_OK if rep.legs_ok else EXIT_PRECONDITION
    layout = build_bienstock(inst, CALIBRATED_CONVENTION)
    if args.prime:
        layout = augment_prime(layout)
    grf, sidecar = layout_to_grf(layout)
    if args.output:
        with open(args.output + ".grf", "w", encoding="ascii") as fh:
            fh.write(grf)
        with open(args.output + ".labels", "w", encoding="ascii") as fh:
            fh.write(sidecar)
        print(f"wrote {args.output}.grf and {args.output}.labels")
    else:
        print(grf, end="")
    return EXIT_OK


def _parse_vertices(text: str, n: int) -> frozenset[int]:
    try:
        vs = frozenset(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise GraphError(f"bad vertex list {text!r}") from exc
    if any(not 0 <= v < n for v in vs):
        raise GraphError(f"vertex list {text!r} out of range")
    return vs


def cmd_checkpartition(args) -> int:
    g = _load_graph(args.graph)
    if args.B is not None:
        B = _parse_vertices(args.B, g.n)
        A = frozenset(range(g.n)) - B
        if args.A is not None and _parse_vertices(args.A, g.n) != A:
            raise GraphError("A and B do not partition the vertex set")
    elif args.A is not None:
        A = _parse_vertices(args.A, g.n)
        B = frozenset(range(g.n)) - A
    else:
        raise GraphError("give at least one of --A / --B")
    chk = verify_skew_partition(g, A, B)
    payload: dict = {"skew": bool(chk.skew)}
    if not chk.skew:
        payload["reason"] = chk.reason
    else:
        bal = verify_balanced(g, A, B, budget=Budget(args.budget))
        payload["balanced"] = bal.balanced
        if bal.witness is not None:
            payload["witness_kind"] = bal.witness_kind
            payload["witness"] = list(bal.witness)
    if args.format == "json":
        _emit_json(payload, args)
    else:
        if not chk.skew:
            print(f"not skew: {chk.reason}")
        elif payload["balanced"]:
            print("skew, balanced")
        else:
            print(f"skew, NOT balanced ({payload['witness_kind']} {payload['witness']})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergekit", description=__doc__)
    ap.add_argument("--budget", type=int, default=10_000_000, help="search-node allowance")
    ap.add_argument("--guard", type=int, default=14, help="brute-force size guard")
    ap.add_argument("--seed", type=int, default=0, help="seed echoed into outputs")
    ap.add_argument("--format", choices=("text", "json", "dot"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="basic-class verdict for a GRF graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("bsp", help="balanced-skew-partition decision")
    p.add_argument("graph")
    p.add_argument("--verify-berge", action="store_true")
    p.add_argument("--oracle", action="store_true", help="brute force under the guard")
    p.set_defaults(func=cmd_bsp)

    p = sub.add_parser("twojoin", help="list 2-joins with classification")
    p.add_argument("graph")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--nonpath", dest="mode", action="store_const", const="nonpath")
    grp.add_argument("--path", dest="mode", action="store_const", const="path")
    grp.add_argument("--all", dest="mode", action="store_const", const="all")
    p.set_defaults(func=cmd_twojoin, mode="all")

    p = sub.add_parser("gadget", help="build or validate a reduction gadget")
    p.add_argument("cnf")
    p.add_argument("--prime", action="store_true", help="apply the 2-vertex augmentation")
    p.add_argument("--validate", action="store_true", help="run the cross-validation report")
    p.add_argument("-o", "--output", help="prefix for .grf and .labels files")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("checkpartition", help="skew / balanced report for a partition")
    p.add_argument("graph")
    p.add_argument("--A", help="comma-separated vertices of A")
    p.add_argument("--B", help="comma-separated vertices of B")
    p.set_defaults(func=cmd_checkpartition)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GraphError as exc:
        msg = str(exc)
        print(f"error: {msg}", file=sys.stderr)
        if "guard" in msg or "budget" in msg:
            return EXIT_BUDGET
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
