"""The ``reltilt`` command line.

Exit codes: 0 when every check passes, 1 when a falsifier is found, 2 for
input errors, 3 when a budget or size cap makes the tool refuse.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .algebra import AlgebraError
from .atlas import IncompleteAtlasError, knit_atlas
from .completion import (
    AlreadyCompleteError,
    NotRigidError,
    Workbench,
    completions,
    exchange_graph,
    mutate,
    verify_mutation_pair,
)
from .io import (
    InputError,
    dump_algebra,
    emit_dot,
    graph_to_dict,
    load_algebra,
    load_subcategory,
    report_json,
    subcategory_to_dict,
)
from .modules import CapExceeded
from .polygon import PolygonError, RelativeProblem, arcs_text, parse_arcs, tiling_end_algebra
from .torsion import (
    RefusalError,
    enumerate_support_tau_tilting,
    enumerate_torsion_classes,
    fac_set,
)
from .theorems import THEOREM_IDS, ALIASES, resolve_theorem, run_verifier, verify_two_completions
from .twoterm import RigidityDisagreement

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


_STDOUT = None  # real stdout while human-readable output is diverted to stderr


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        return
    if path == "-":
        (_STDOUT or sys.stdout).write(text)
    else:
        Path(path).write_text(text)


def _workbench(args) -> Workbench:
    alg = load_algebra(args.algebra, prime=args.prime)
    atlas = knit_atlas(alg, budget=args.budget)
    if not atlas.complete:
        raise _Fail(EXIT_REFUSED, f"knitting budget {args.budget} exhausted on {args.algebra}; exhaustive commands refused")
    return Workbench(alg, atlas)


# ----------------------------------------------------------------------
# subcommands


def cmd_algebra(args) -> int:
    alg = load_algebra(args.path, prime=args.prime)
    if args.action == "check":
        print(f"ok: {alg!r}")
        print("basis: " + " ".join(b.label() for b in alg.basis))
        return EXIT_OK
    fmt = args.format or ("toml" if args.path.endswith(".toml") else "json")
    sys.stdout.write(dump_algebra(alg, fmt))
    return EXIT_OK


def cmd_atlas(args) -> int:
    wb = _workbench(args)
    at = wb.atlas
    rows = []
    for i in at.sorted_indices(range(len(at))):
        tau = at.tau.get(i)
        rows.append({"index": i, "label": wb.label(("mod", i)), "dims": list(at.modules[i].dims),
                     "tau": wb.label(("mod", tau)) if tau is not None else None})
        print(f"{wb.label(('mod', i)):>12}  dims={at.modules[i].dims}  tau={rows[-1]['tau']}")
    print(f"{len(at)} indecomposables")
    _write(args.json, report_json({"command": "atlas", "algebra": args.algebra, "modules": rows}))
    return EXIT_OK


def cmd_sttilt(args) -> int:
    wb = _workbench(args)
    pairs = enumerate_support_tau_tilting(wb.atlas)
    graph = exchange_graph(wb)
    from_graph = sorted(wb.to_pair(U) for U in graph.vertices)
    for P in pairs:
        mods = ", ".join(wb.label(("mod", i)) for i in P.modules) or "0"
        print(f"({mods} ; E={list(P.e_vertices)})")
    agree = from_graph == pairs
    print(f"{len(pairs)} support tau-tilting pairs; exchange graph {'agrees' if agree else 'DISAGREES'}")
    _write(args.json, report_json({
        "command": "sttilt enumerate", "algebra": args.algebra, "count": len(pairs), "agrees_with_exchange_graph": agree,
        "pairs": [{"modules": [wb.label(("mod", i)) for i in P.modules], "e_vertices": list(P.e_vertices)} for P in pairs],
    }))
    return EXIT_OK if agree else EXIT_FALSIFIED


def cmd_completions(args) -> int:
    wb = _workbench(args)
    X = load_subcategory(wb, args.subcat)
    res = completions(wb, X, exhaustive=args.exhaustive)
    print(f"X   = {wb.labels(res.x)}")
    print(f"M_X = {wb.labels(res.m_x)}")
    print(f"N_X = {wb.labels(res.n_x)}")
    if args.exhaustive:
        print(f"almost complete: {res.almost_complete}; completions found: {[wb.labels(f) for f in res.found]}")
    for name, ok in res.checks.items():
        print(f"  [{'pass' if ok else 'FAIL'}] {name}")
    _write(args.json, report_json({
        "command": "completions", "algebra": args.algebra, "x": subcategory_to_dict(wb, res.x),
        "m_x": subcategory_to_dict(wb, res.m_x), "n_x": subcategory_to_dict(wb, res.n_x),
        "almost_complete": res.almost_complete, "found": [wb.labels(f) for f in res.found], "checks": res.checks,
    }))
    return EXIT_OK if res.ok else EXIT_FALSIFIED


def cmd_mutate(args) -> int:
    wb = _workbench(args)
    U = load_subcategory(wb, args.subcat)
    W = load_subcategory(wb, args.at)
    if len(W) != 1 or W[0] not in U:
        raise InputError("--at must name exactly one indecomposable of the subcategory")
    from .completion import is_weak_cluster_tilting

    if not is_weak_cluster_tilting(wb, U):
        raise InputError(f"{wb.labels(U)} is not weak cluster tilting")
    V, side = mutate(wb, U, W[0])
    X = tuple(k for k in U if k != W[0])
    M, N = (U, V) if side == "N" else (V, U)
    cert = verify_mutation_pair(wb, X, M, N)
    print(f"mutation of {wb.labels(U)} at {wb.label(W[0])}: {wb.labels(V)}")
    print(f"result is the {'Bongartz' if side == 'N' else 'co-Bongartz'} completion of {wb.labels(X)}")
    print(f"mutation pair certificate: {'pass' if cert.ok else 'FAIL'}")
    _write(args.json, report_json({
        "command": "mutate", "algebra": args.algebra, "from": wb.labels(U), "at": wb.label(W[0]),
        "to": wb.labels(V), "side": side, "certificate": cert.ok,
    }))
    return EXIT_OK if cert.ok else EXIT_FALSIFIED


def cmd_exchange_graph(args) -> int:
    wb = _workbench(args)
    g = exchange_graph(wb, budget=args.max_vertices)
    if not g.complete:
        raise _Fail(EXIT_REFUSED, f"exchange graph budget {args.max_vertices} exhausted on {args.algebra}")
    names = [" ".join(wb.labels(U)) for U in g.vertices]
    print(f"{len(g.vertices)} vertices, {len(g.edges)} edges")
    _write(args.dot, emit_dot(g, names))
    _write(args.json, report_json({"command": "exchange-graph", "algebra": args.algebra, **graph_to_dict(wb, g, names)}))
    return EXIT_OK


def cmd_torsion(args) -> int:
    wb = _workbench(args)
    at = wb.atlas
    pairs = enumerate_support_tau_tilting(at)
    facs = sorted(sorted(fac_set(at, P.modules)) for P in pairs)
    classes = sorted(sorted(T) for T in enumerate_torsion_classes(at, max_size=args.max_atlas))
    for T in classes:
        print("{" + ", ".join(wb.label(("mod", i)) for i in T) + "}")
    agree = facs == classes
    print(f"{len(classes)} torsion classes; {len(pairs)} support tau-tilting pairs; Fac bijection {'holds' if agree else 'FAILS'}")
    _write(args.json, report_json({
        "command": "torsion", "algebra": args.algebra, "torsion_classes": [[wb.label(("mod", i)) for i in T] for T in classes],
        "pairs": len(pairs), "bijection": agree,
    }))
    return EXIT_OK if agree else EXIT_FALSIFIED


def cmd_verify(args) -> int:
    wb = _workbench(args)
    names = THEOREM_IDS if args.theorem == "all" else (resolve_theorem(args.theorem),)
    reports = []
    for name in names:
        if name == "main1":
            rep = verify_two_completions(wb, args.algebra, exhaustive=args.exhaustive)
        else:
            rep = run_verifier(name, wb, args.algebra)
        reports.append(rep)
        status = "pass" if rep.passed else "FAIL"
        print(f"[{status}] {rep.theorem}: {rep.checked} instances on {args.algebra}")
        if name == "main1":
            for inst in rep.details.get("instances", []):
                print(f"    X={inst['x']}  M_X={inst['m_x']}  N_X={inst['n_x']}")
        for f in rep.falsifiers[:5]:
            print(f"    falsifier: {f}")
    _write(args.json, report_json({"command": "verify", "algebra": args.algebra, "reports": [r.to_dict() for r in reports]}))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FALSIFIED


def cmd_polygon(args) -> int:
    m = args.n + 3
    R = parse_arcs(args.rigid, m)
    P = RelativeProblem(R, prime=args.prime)
    wb = P.workbench
    print(f"{m}-gon, R = {arcs_text(R)}; arcs outside R*R[1]: {arcs_text(P.outside) or 'none'}")
    payload = {"command": f"polygon {args.action}", "n": args.n, "rigid": arcs_text(R), "outside": arcs_text(P.outside)}
    code = EXIT_OK
    if args.action == "completions":
        X = P.realize(parse_arcs(args.subcat or "", m))
        res = completions(wb, X)
        print(f"X   = {arcs_text(P.arcs(res.x)) or '0'}")
        print(f"M_X = {arcs_text(P.arcs(res.m_x))}")
        print(f"N_X = {arcs_text(P.arcs(res.n_x))}")
        for name, ok in res.checks.items():
            print(f"  [{'pass' if ok else 'FAIL'}] {name}")
        payload.update(x=arcs_text(P.arcs(res.x)), m_x=arcs_text(P.arcs(res.m_x)), n_x=arcs_text(P.arcs(res.n_x)), checks=res.checks)
        code = EXIT_OK if res.ok else EXIT_FALSIFIED
    elif args.action == "exchange-graph":
        g = exchange_graph(wb)
        names = [arcs_text(P.arcs(U)) for U in g.vertices]
        print(f"{len(g.vertices)} vertices, {len(g.edges)} edges")
        for nm in names:
            print("  " + nm)
        _write(args.dot, emit_dot(g, names, title=f"polygon{m}"))
        payload.update(graph_to_dict(wb, g, names))
    else:
        alg = tiling_end_algebra(R, prime=args.prime)
        print(f"Gamma_R: {alg!r}")
        for k, r in enumerate(R):
            print(f"  vertex {k} = arc {r}")
        payload["algebra"] = alg.to_dict()
    _write(args.json, report_json(payload))
    return code


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reltilt", description="Relative two-term tilting workbench.")
    p.add_argument("--prime", type=int, default=None, help="field characteristic (default: session prime)")
    sub = p.add_subparsers(dest="command", required=True)

    def with_algebra(sp):
        sp.add_argument("--algebra", required=True, help="algebra file (TOML/JSON) or built-in name like A3, A4r3")
        sp.add_argument("--budget", type=int, default=200, help="knitting budget (indecomposables)")
        sp.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")
        return sp

    a = sub.add_parser("algebra", help="validate or dump an algebra file")
    a.add_argument("action", choices=["check", "dump"])
    a.add_argument("path")
    a.add_argument("--format", choices=["json", "toml"])
    a.set_defaults(func=cmd_algebra)

    with_algebra(sub.add_parser("atlas", help="list the indecomposable modules")).set_defaults(func=cmd_atlas)

    s = with_algebra(sub.add_parser("sttilt", help="support tau-tilting pairs"))
    s.add_argument("action", choices=["enumerate"])
    s.set_defaults(func=cmd_sttilt)

    c = with_algebra(sub.add_parser("completions", help="M_X and N_X of a rigid subcategory"))
    c.add_argument("--subcat", required=True, help="JSON file or comma-separated labels, e.g. 'M(10)'")
    c.add_argument("--no-exhaustive", dest="exhaustive", action="store_false", help="skip the complement search")
    c.set_defaults(func=cmd_completions)

    mu = with_algebra(sub.add_parser("mutate", help="mutate a weak cluster tilting subcategory"))
    mu.add_argument("--subcat", required=True)
    mu.add_argument("--at", required=True, help="label of the summand to exchange")
    mu.set_defaults(func=cmd_mutate)

    g = with_algebra(sub.add_parser("exchange-graph", help="mutation closure from add A"))
    g.add_argument("--dot", metavar="PATH", help="write DOT ('-' for stdout)")
    g.add_argument("--max-vertices", type=int, default=500)
    g.set_defaults(func=cmd_exchange_graph)

    t = with_algebra(sub.add_parser("torsion", help="torsion classes and the Fac bijection"))
    t.add_argument("--max-atlas", type=int, default=20)
    t.set_defaults(func=cmd_torsion)

    v = with_algebra(sub.add_parser("verify", help="run a theorem verifier sweep"))
    v.add_argument("theorem", help=f"one of: all, {', '.join(THEOREM_IDS)}, {', '.join(ALIASES)}")
    v.add_argument("--exhaustive", action="store_true", help="main1: search every complement for a third completion")
    v.set_defaults(func=cmd_verify)

    pg = sub.add_parser("polygon", help="type A cluster category of the (n+3)-gon")
    pg.add_argument("action", choices=["completions", "exchange-graph", "algebra"])
    pg.add_argument("--n", type=int, required=True, help="rank; the polygon has n+3 vertices")
    pg.add_argument("--rigid", required=True, help="arcs of R, e.g. '0-2,0-3'")
    pg.add_argument("--subcat", help="arcs of X")
    pg.add_argument("--dot", metavar="PATH")
    pg.add_argument("--json", metavar="PATH")
    pg.set_defaults(func=cmd_polygon)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    if "-" in (getattr(args, "json", None), getattr(args, "dot", None)):
        # keep stdout machine-readable: the report goes there, the prose to stderr
        global _STDOUT
        _STDOUT = sys.stdout
        try:
            with contextlib.redirect_stdout(sys.stderr):
                return _dispatch(args)
        finally:
            _STDOUT = None
    return _dispatch(args)


def _dispatch(args) -> int:
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"reltilt: {exc}", file=sys.stderr)
        return exc.code
    except (RefusalError, IncompleteAtlasError, CapExceeded) as exc:
        print(f"reltilt: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (RigidityDisagreement, AssertionError) as exc:
        print(f"reltilt: falsifier: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (InputError, AlgebraError, PolygonError, NotRigidError, AlreadyCompleteError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"reltilt: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()


__all__: List[str] = ["main", "build_parser", "entry"]
