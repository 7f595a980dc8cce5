"""Command-line entry point: ``px build|params|witness|verify|aut|twins|interchange``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import fields

import numpy as np

from . import campaign, formulas, group as grp, symmetry, twins, witnesses
from .graph import Vertex, build, check_params, export

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TABLE_LIMIT = 4_000_000


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _vertex(G, text: str) -> Vertex:
    try:
        v = Vertex.parse(text)
        G.vertex_id(v)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return v


def checking_group(n: int, k: int):
    """Permutation tables when small enough, else the streamed algebraic group."""
    if n == 4 or (n << k) * grp.group_order_A(n) <= TABLE_LIMIT:
        return grp.full_aut(n, k)
    return grp.AlgebraicGroup(n, k)


# ------------------------------------------------------------------ commands

def cmd_build(args) -> int:
    G = build(args.n, args.k)
    _emit(export(G, args.format), args.out)
    return EXIT_OK


def cmd_params(args) -> int:
    _emit(_dumps(formulas.params(args.n, args.k)), args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    n, k = args.n, args.k
    G = build(n, k)
    report = {"kind": args.kind, "n": n, "k": k, "vertices": [], "verified": None}
    try:
        if args.kind == "det":
            S = witnesses.det_witness(n, k)
            report["vertices"] = [str(v) for v in S]
            check = lambda group: symmetry.is_determining(G, group, S)
        elif args.kind == "cost":
            R = witnesses.cost_witness(n, k)
            report["vertices"] = [str(v) for v in R]
            check = lambda group: symmetry.is_distinguishing(G, group, symmetry.two_coloring(G, R))
        elif args.kind == "dist":
            colors = witnesses.dist_witness(n, k)
            if k >= 2:
                report["vertices"] = [str(G.vertex_from_id(int(v))) for v in (colors == 0).nonzero()[0]]
            else:
                report["coloring"] = {str(v): int(c) for v, c in zip(G.vertices(), colors)}
            report["colors"] = int(colors.max()) + 1
            check = lambda group: symmetry.is_distinguishing(G, group, colors)
        else:
            if not (args.u and args.v):
                raise UsageError("--kind interchange needs --u and --v")
            u, v = _vertex(G, args.u), _vertex(G, args.v)
            alpha = witnesses.interchange_witness(n, k, u, v)
            report["vertices"] = [str(u), str(v)]
            report["automorphism"] = str(alpha)
            check = lambda group: grp.apply(alpha, u) == v and grp.apply(alpha, v) == u
    except witnesses.NotApplicable as exc:
        report["status"] = "not-applicable"
        report["reason"] = str(exc)
        _emit(_dumps(report), args.out)
        return EXIT_USAGE
    except witnesses.NoWitness as exc:
        report["status"] = "no-witness"
        report["reason"] = str(exc)
        _emit(_dumps(report), args.out)
        return EXIT_FAIL
    if args.check:
        report["verified"] = bool(check(checking_group(n, k)))
    _emit(_dumps(report), args.out)
    return EXIT_FAIL if report["verified"] is False else EXIT_OK


def cmd_verify(args) -> int:
    settings = dict(args.config_values)
    for key in ("workers", "max_subset_size"):
        if getattr(args, key) is not None:
            settings[key] = getattr(args, key)
    cfg_fields = {f.name: f for f in fields(campaign.Config)}
    kwargs = {}
    for key, value in settings.items():
        if key not in cfg_fields or key in ("checks", "pairs"):
            raise UsageError(f"unknown config key {key!r}")
        if key in ("out_dir", "format"):
            kwargs[key] = str(value)
        elif key == "timing":
            kwargs[key] = str(value).lower() in ("1", "true", "yes")
        else:
            try:
                kwargs[key] = int(value)
            except ValueError as exc:
                raise UsageError(f"config key {key!r} needs an integer") from exc
    kwargs.setdefault("workers", os.cpu_count() or 1)
    if args.no_timing:
        kwargs["timing"] = False
    if args.checks:
        kwargs["checks"] = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    if (args.n is None) != (args.k is None):
        raise UsageError("--n and --k go together")
    if args.n is not None:
        check_params(args.n, args.k)
        kwargs["pairs"] = ((args.n, args.k),)
    try:
        cfg = campaign.Config(**kwargs)
        reports = campaign.run(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    total = campaign.summary(reports)
    out = args.out
    if out and not os.path.isabs(out):
        out = os.path.join(cfg.out_dir, out)
    _emit("\n".join(_dumps(r) for r in reports + [total]), out)
    return EXIT_OK if total["status"] == "pass" else EXIT_FAIL


def cmd_aut(args) -> int:
    n, k = args.n, args.k
    out = {"n": n, "k": k, "mode": args.mode}
    if args.mode == "oracle":
        budget = symmetry.SearchBudget.from_env(max_generic_vertices=max(n << k, 120))
        try:
            out["order"] = len(symmetry.generic_automorphisms(build(n, k), budget))
        except symmetry.BudgetExhausted as exc:
            out["status"] = "budget"
            out["reason"] = str(exc)
            _emit(_dumps(out), args.out)
            return EXIT_FAIL
        _emit(_dumps(out), args.out)
        return EXIT_OK
    if n == 4:
        out["order"] = len(grp.full_aut(n, k))
    else:
        # distinct tables, so an unfaithful action would show up as a short count
        out["order"] = len(np.unique(grp.A_perm_tables(n, k), axis=0))
    out["A_order"] = grp.group_order_A(n)
    if args.mode == "count":
        _emit(_dumps(out), args.out)
        return EXIT_OK
    lines = [str(a) for a in grp.enumerate_A(n, k)]
    if (n, k) == (4, 3):
        x = grp.xi()
        lines += [str(grp.compose(a, x)) for a in grp.enumerate_A(n, k)]
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_twins(args) -> int:
    G = build(args.n, args.k)
    part = twins.twin_classes(G)
    q = twins.twin_quotient(G)
    label = lambda v: str(G.vertex_from_id(v))
    if args.format == "json":
        body = {
            "n": G.n, "k": G.k,
            "classes": [[label(v) for v in c] for c in part.classes],
            "vertices": [label(v) for v in q.nodes],
            "sizes": list(q.sizes),
            "edges": [[label(a), label(b)] for a, b in q.edges],
        }
        _emit(_dumps(body), args.out)
    else:
        lines = [f"# {label(v)} size={s}" for v, s in zip(q.nodes, q.sizes)]
        lines += [f"{label(a)} {label(b)}" for a, b in q.edges]
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_interchange(args) -> int:
    n, k = args.n, args.k
    G = build(n, k)
    u, v = _vertex(G, args.u), _vertex(G, args.v)
    if u == v:
        raise UsageError("--u and --v must differ")
    clauses = sorted(witnesses.interchangeable_clauses(n, k, u, v))
    out = {"n": n, "k": k, "u": str(u), "v": str(v), "interchangeable": bool(clauses), "clauses": clauses}
    if clauses:
        out["witness"] = str(witnesses.interchange_witness(n, k, u, v))
    status = EXIT_OK
    if args.brute:
        if (n << k) * grp.group_order_A(n) > TABLE_LIMIT:
            raise UsageError(f"--brute over A(PX({n},{k})) exceeds the table limit")
        row = symmetry.interchangeable_bruteforce(G, grp.A_perm_tables(n, k), G.vertex_id(u), G.vertex_id(v))
        out["bruteforce"] = row is not None
        out["agree"] = out["bruteforce"] == out["interchangeable"]
        status = EXIT_OK if out["agree"] else EXIT_FAIL
    _emit(_dumps(out), args.out)
    return status


# ------------------------------------------------------------------ parser

def _params(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--k", type=int, required=required)
    p.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="px", description="Symmetry parameters of PX(n,k) graphs.")
    parser.add_argument("--config", help="key = value file with verify settings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="export PX(n,k)")
    _params(p)
    p.add_argument("--format", choices=("edges", "json", "dot"), default="edges")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("params", help="closed-form det, dist and cost")
    _params(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("witness", help="emit a witness set or coloring")
    _params(p)
    p.add_argument("--kind", choices=("det", "dist", "cost", "interchange"), required=True)
    p.add_argument("--check", action="store_true", help="verify against the automorphism group")
    p.add_argument("--u")
    p.add_argument("--v")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run the verification campaign")
    _params(p, required=False)
    p.add_argument("--checks", help=f"comma list from {','.join(campaign.CHECKS)}")
    p.add_argument("--workers", type=int)
    p.add_argument("--max-subset-size", dest="max_subset_size", type=int)
    p.add_argument("--no-timing", action="store_true", help="null elapsed_ms for byte-stable output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("aut", help="automorphism group order or elements")
    _params(p)
    p.add_argument("--mode", choices=("count", "list", "oracle"), default="count")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("twins", help="twin classes and quotient graph")
    _params(p)
    p.add_argument("--format", choices=("edges", "json"), default="json")
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("interchange", help="can an automorphism swap u and v")
    _params(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--brute", action="store_true", help="also search A exhaustively")
    p.set_defaults(func=cmd_interchange)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.config_values = campaign.load_config(args.config) if args.config else {}
        if args.n is not None and args.k is not None:
            check_params(args.n, args.k)
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"px: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except grp.CapacityError as exc:
        print(f"px: capacity: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"px: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
