"""Command-line entry point: ``gafcheck <command> ...``.

Exit codes: 0 success, 1 a check failed or the input has no fixed point of
the requested kind, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import io
from .errors import GafError, MalformedCycles, ParseError
from .harness import DEFAULT_SEED, FAIL, REGISTRY, RunOptions, _jsonable, run_checks, summary
from .perm import DEFAULT_CAP

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True)


def _emit(obj) -> None:
    print(_dump(obj))


# ------------------------------------------------------------------ commands


def cmd_verify_paper(args) -> int:
    if args.list:
        for cid in sorted(REGISTRY):
            print(f"{cid}\t{REGISTRY[cid].anchor}")
        return EXIT_OK
    if args.corrupt and args.corrupt not in REGISTRY:
        print(f"unknown check id {args.corrupt!r}", file=sys.stderr)
        return EXIT_USAGE
    for prefix in args.only or []:
        if not any(cid == prefix or cid.startswith(prefix.rstrip(".") + ".") for cid in REGISTRY):
            print(f"no check id matches {prefix!r}", file=sys.stderr)
            return EXIT_USAGE
    options = RunOptions(
        tolerance=args.tolerance, cap=args.cap, seed=args.seed, word_len=args.word_len, corrupt=args.corrupt
    )
    results = run_checks(options, only=args.only, workers=args.workers)
    report = summary(results, options)
    if args.json:
        for r in results:
            _emit(r.to_json(timing=args.timing))
        _emit(report)
    else:
        for r in results:
            line = f"{r.status:<8}{r.check_id:<34}{REGISTRY[r.check_id].anchor}"
            if args.timing:
                line += f"  [{r.elapsed:.0f} ms]"
            print(line)
            if r.status == FAIL:
                print(f"        {_dump(r.details)}")
        s = report["summary"]
        print(f"{s['PASS']} passed, {s['FAIL']} failed, {s['SKIPPED']} skipped")
    return EXIT_FAIL if any(r.status == FAIL for r in results) else EXIT_OK


def _analyze_perm(data: dict, args) -> dict:
    from .perm import classify_action, generate_group, is_fixating

    degree, gens = io.perm_group_from_json(data)
    G = generate_group(gens, args.cap, degree=degree)
    out = classify_action(G).to_json()
    if args.fixating:
        res = is_fixating(G, args.cap)
        out["fixating"] = res.fixating
        if res.witness is not None:
            out["eccentric_subgroup"] = {"order": res.witness.order, "generators": [str(g) for g in res.witness.generators]}
    return out


def _analyze_matrix(data: dict, args) -> dict:
    from .lattice import zn_global_fixed_point
    from .perm import classify_action, is_fixating

    if "q" in data:
        from .glfq import gl_fq_to_permutation

        q, d = int(data["q"]), int(data.get("d", 0))
        gens = data["generators"]
        d = d or len(gens[0])
        G = gl_fq_to_permutation(d, q, gens, cap=args.cap)
        out = classify_action(G).to_json()
        out["generators"] = [str(g) for g in G.generators]
        if args.fixating:
            out["fixating"] = is_fixating(G, args.cap).fixating
        return out
    if "affine" in data:
        maps = [io.affine_from_json(item) for item in data["affine"]]
        res = zn_global_fixed_point(maps, cap=args.cap, dim=maps[0].dim if maps else None)
        return {"kind": "GAG", "point": list(res.point), "order": res.order, "half_coordinates": list(res.half_coords)}
    if "matrix" in data:
        from .sl2z import trace_certificate

        M = io.matrix_from_json(data["matrix"])
        cert = trace_certificate(M, int(data.get("n", 1)))
        return {"n": cert.n, "alpha": cert.alpha, "alpha_prev": cert.alpha_prev, "trace": cert.trace,
                "bound": cert.bound, "holds": cert.holds, "power": [list(r) for r in cert.power.rows]}
    raise ParseError("matrix descriptor needs 'q', 'affine' or 'matrix'")


def _graph_generators(data: dict, n: int):
    return [io.permutation_from_json(g, n) for g in data.get("generators", [])]


def _analyze_tree(data: dict, args) -> dict:
    from .tree import finite_tree_center, tree_global_fixed_point

    T = io.tree_from_json(data)
    gens = _graph_generators(data, T.n)
    return {"vertex": tree_global_fixed_point(T, gens), "center": finite_tree_center(T).to_json()}


def _analyze_colored(data: dict, args) -> dict:
    from .colored import colored_global_fixed_point

    X = io.colored_graph_from_json(data, seed=args.seed)
    gens = _graph_generators(data, X.n)
    return {"vertex": colored_global_fixed_point(X, gens, args.cap), "cells": [c.to_json() for c in X.cells]}


ANALYZERS = {"perm": _analyze_perm, "matrix": _analyze_matrix, "tree": _analyze_tree, "colored-graph": _analyze_colored}


def cmd_analyze(args) -> int:
    data = io.load_json(args.path)
    if not isinstance(data, dict):
        raise ParseError("descriptor must be a JSON object")
    _emit(ANALYZERS[args.kind](data, args))
    return EXIT_OK


def cmd_circumcenter(args) -> int:
    from .circumcenter import circumcenter

    points, space = io.points_from_json(io.load_json(args.path))
    space = (args.space or space or "EUCLIDEAN").upper()
    res = circumcenter(points, space=space, method=args.method, tol=args.tolerance, seed=args.seed)
    _emit({"space": space, **res.to_json()})
    return EXIT_OK


def cmd_classify_isometry(args) -> int:
    from .mobius import Sl2Element, classify_h2, eccentricity_witness_h3, has_fixed_point_h3, mobius_line_fixed_points

    data = io.load_json(args.path)

    def element(key: str) -> Sl2Element:
        rows = data[key] if isinstance(data, dict) else data
        if not (isinstance(rows, list) and len(rows) == 2 and all(isinstance(r, list) and len(r) == 2 for r in rows)):
            raise ParseError(f"{key!r} must be a 2x2 matrix")
        return Sl2Element.from_matrix([[io.complex_from_json(x) for x in r] for r in rows])

    f = element("matrix" if isinstance(data, dict) and "matrix" in data else "f")
    if f.is_real():
        out = classify_h2(f, tol=args.tolerance).to_json()
        rows = data.get("matrix", data.get("f")) if isinstance(data, dict) else data
        if all(isinstance(x, int) for r in rows for x in r):
            line = mobius_line_fixed_points(rows)
            out["line_fixed_points"] = [str(x) for x in line.points] if line.points != "ALL" else "ALL"
    else:
        tr = complex(f.trace())
        out = {"trace": [tr.real, tr.imag], "fixes_point_h3": has_fixed_point_h3(f, args.tolerance)}
    if isinstance(data, dict) and "g" in data:
        out["pair"] = eccentricity_witness_h3(f, element("g"), tol=args.tolerance).to_json()
    _emit(out)
    return EXIT_OK


def cmd_tree_fixpoint(args) -> int:
    from .tree import bounded_orbit_fixed_point, tree_global_fixed_point

    data = io.load_json(args.path)
    if not isinstance(data, dict):
        raise ParseError("descriptor must be a JSON object")
    if "colors" in data:
        _emit(_analyze_colored(data, args))
        return EXIT_OK
    T = io.tree_from_json(data)
    gens = _graph_generators(data, T.n)
    out = {"vertex": tree_global_fixed_point(T, gens)}
    if args.seed_vertex is not None:
        out["orbit_center"] = bounded_orbit_fixed_point(T, gens, args.seed_vertex, args.cap)
    _emit(out)
    return EXIT_OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    common.add_argument("--cap", type=int, default=None, help="largest group or orbit to enumerate")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized suites (default {DEFAULT_SEED})")
    common.add_argument("--word-len", type=int, default=6, help="word length for the word audits (default 6)")
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")

    parser = argparse.ArgumentParser(prog="gafcheck", description="Fixed points of group actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-paper", parents=[common], help="replay every explicit construction")
    p.add_argument("--timing", action="store_true", help="include elapsed milliseconds")
    p.add_argument("--workers", type=int, default=1, help="run checks in this many processes")
    p.add_argument("--corrupt", metavar="CHECK_ID", help="inject a fault into one check")
    p.add_argument("--only", nargs="+", metavar="PREFIX", help="run only checks with these ids or id prefixes")
    p.add_argument("--list", action="store_true", help="list check ids and exit")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("analyze", parents=[common], help="verdict for a group, matrix set, tree or colored graph")
    p.add_argument("kind", choices=sorted(ANALYZERS))
    p.add_argument("path")
    p.add_argument("--fixating", action="store_true", help="also decide whether the group is fixating")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("circumcenter", parents=[common], help="centre and radius of a finite point set")
    p.add_argument("path")
    p.add_argument("--space", type=str.upper, choices=["EUCLIDEAN", "HYPERBOLIC"])
    p.add_argument("--method", choices=["welzl", "descent"], default="welzl")
    p.set_defaults(func=cmd_circumcenter)

    p = sub.add_parser("classify-isometry", parents=[common], help="trace class and fixed points of a Moebius map")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify_isometry)

    p = sub.add_parser("tree-fixpoint", parents=[common], help="global fixed vertex of tree or colored-graph isometries")
    p.add_argument("path")
    p.add_argument("--seed-vertex", type=int, help="also compute the centre of this vertex's orbit")
    p.set_defaults(func=cmd_tree_fixpoint)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cap", None) is None and args.command != "verify-paper":
        args.cap = DEFAULT_CAP
    try:
        return args.func(args)
    except (ParseError, MalformedCycles) as exc:
        _emit({"error": "PARSE_ERROR", "message": str(exc), "payload": exc.payload})
        return EXIT_USAGE
    except GafError as exc:
        _emit({"error": exc.code, "message": str(exc), "payload": exc.payload})
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
