"""Command-line front end.

Payloads (JSON or CSV) go to stdout and diagnostics to stderr. Exit codes:
0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .availability import availability_profile, verify_availability
from .bounds import REGISTRY, BoundParams, find_crossing, sweep
from .constructions import (
    PLATONIC_NAMES,
    REFERENCE_AVAILABILITY,
    complete_graph_code,
    fano_covering_system,
    graph_code,
    hamming_code,
    platonic,
    polyhedron_code,
    read_edge_list,
    simplex_code,
)
from .errors import LRCError
from .gf2 import LinearCode, code_from_json, code_from_parity, code_to_json, weight_enumerator
from .search import verify_rate_optimal_unique

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _read_text(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _enumerator_json(c: LinearCode) -> dict:
    w = weight_enumerator(c)
    return {"polynomial": str(w), "counts": list(w.counts)}


# -- construct ---------------------------------------------------------------


def _build(family: str, args: list[str]) -> LinearCode:
    def one_int(what: str) -> int:
        if len(args) != 1:
            raise LRCError(f"{family} takes one argument: {what}")
        try:
            return int(args[0])
        except ValueError:
            raise LRCError(f"{what} must be an integer, got {args[0]!r}") from None

    if family == "platonic":
        if len(args) != 1:
            raise LRCError(f"platonic takes one of: {', '.join(PLATONIC_NAMES)}")
        return polyhedron_code(platonic(args[0]))[0]
    if family == "graph":
        if len(args) != 1:
            raise LRCError("graph takes an edge-list file ('-' for stdin)")
        return graph_code(read_edge_list(_read_text(args[0])))
    if family == "complete":
        return complete_graph_code(one_int("q"))
    if family == "simplex":
        return simplex_code(one_int("m"))
    if family == "hamming":
        return hamming_code(one_int("m"))
    if family == "fano":
        if args:
            raise LRCError("fano takes no arguments")
        return code_from_parity(fano_covering_system().matrix())
    raise LRCError(f"unknown family {family!r}")


def cmd_construct(ns) -> int:
    c = _build(ns.family, ns.args)
    out = code_to_json(c)
    if ns.with_enumerator:
        out["weight_enumerator"] = _enumerator_json(c)
    _emit(out)
    return EXIT_OK


# -- analyze -----------------------------------------------------------------


def cmd_analyze(ns) -> int:
    try:
        c = code_from_json(_read_text(ns.code))
    except json.JSONDecodeError as e:
        raise LRCError(f"cannot parse code JSON: {e}") from None
    if ns.profile:
        prof = availability_profile(c, ns.r)
        _emit({"n": c.n, "k": c.k, "r": ns.r, "profile": prof})
        return EXIT_OK
    if ns.t is None:
        raise LRCError("analyze needs --t unless --profile is given")
    rep = verify_availability(c, ns.r, ns.t, jobs=ns.jobs)
    _emit({"n": c.n, "k": c.k, **rep.to_json()})
    if not rep.ok:
        print(f"bits without ({ns.r},{ns.t}) repair groups: {rep.failing_bits}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAILED


# -- bounds ------------------------------------------------------------------


def _parse_range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise LRCError(f"range must look like a:b, got {text!r}") from None
    if a > b:
        raise LRCError(f"empty range {text!r}")
    return range(a, b + 1)


def _parse_fixed(items: list[str]) -> BoundParams:
    vals = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep or key not in ("r", "t", "n"):
            raise LRCError(f"--fix takes r=, t= or n=, got {item!r}")
        try:
            vals[key] = int(val)
        except ValueError:
            raise LRCError(f"--fix value must be an integer, got {item!r}") from None
    return BoundParams(**vals)


def cmd_bounds(ns) -> int:
    fixed = _parse_fixed(ns.fix)
    if ns.sweep is None or ns.range is None:
        raise LRCError("bounds needs --sweep and --range")
    values = _parse_range(ns.range)
    if ns.crossing:
        a, b = ns.crossing
        x = find_crossing(a, b, ns.sweep, values, fixed)
        print("none" if x is None else x)
        return EXIT_OK
    names = ns.names or list(REGISTRY)
    table = sweep(names, ns.sweep, values, fixed)
    if ns.format == "json":
        print(table.dumps())
    else:
        sys.stdout.write(table.to_csv())
    return EXIT_OK


# -- table1 ------------------------------------------------------------------


def table1_rows() -> list[dict]:
    rows = []
    for nm in PLATONIC_NAMES:
        c = polyhedron_code(platonic(nm))[0]
        r, t = REFERENCE_AVAILABILITY[nm]
        w = weight_enumerator(c)
        matched = acceptance.matching_rows(w.terms())
        rows.append({
            "solid": nm,
            "n": c.n,
            "k": c.k,
            "availability": {"r": r, "t": t, "certified": verify_availability(c, r, t).ok},
            "weight_enumerator": str(w),
            "matches_reference_row": matched[0] if matched else None,
        })
    return rows


def cmd_table1(ns) -> int:
    rows = table1_rows()
    if ns.format == "json":
        _emit(rows)
    else:
        print("solid,n,k,r,t,certified,weight_enumerator,matches_reference_row")
        for row in rows:
            a = row["availability"]
            print(f"{row['solid']},{row['n']},{row['k']},{a['r']},{a['t']},{a['certified']},"
                  f"{row['weight_enumerator']},{row['matches_reference_row']}")
    return EXIT_OK if all(r["availability"]["certified"] for r in rows) else EXIT_FAILED


# -- search ------------------------------------------------------------------


def cmd_search(ns) -> int:
    rate = None
    if ns.expect_rate is not None:
        try:
            rate = Fraction(ns.expect_rate)
        except (ValueError, ZeroDivisionError):
            raise LRCError(f"--expect-rate must be a rational like 1/2, got {ns.expect_rate!r}") from None
    rep = verify_rate_optimal_unique(ns.n, ns.r, ns.t, rate, ns.expect, jobs=ns.jobs)
    print(rep.dumps())
    if not rep.expectations_met:
        print("search expectations not met", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def cmd_verify(ns) -> int:
    keys = ns.only or list(acceptance.CRITERIA)
    unknown = [k for k in keys if k not in acceptance.CRITERIA]
    if unknown:
        raise LRCError(f"unknown criteria {unknown}; known: {', '.join(acceptance.CRITERIA)}")
    results = acceptance.run_all(keys)
    for res in results:
        print(res.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrc", description="Binary codes with availability: construction, analysis, bounds, search.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="print a code as JSON")
    p.add_argument("family", choices=["platonic", "graph", "complete", "simplex", "hamming", "fano"])
    p.add_argument("args", nargs="*", help="solid name, edge-list file, q or m")
    p.add_argument("--with-enumerator", action="store_true")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("analyze", help="certify (r,t)-availability of a code JSON file")
    p.add_argument("code", help="code JSON file, '-' for stdin")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--profile", action="store_true", help="report the largest t per bit")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("bounds", help="evaluate rate bounds over a parameter range")
    p.add_argument("--names", nargs="+", choices=list(REGISTRY))
    p.add_argument("--sweep", choices=["r", "t", "n"])
    p.add_argument("--range", help="inclusive a:b")
    p.add_argument("--fix", action="append", default=[], help="k=v, repeatable")
    p.add_argument("--crossing", nargs=2, metavar=("A", "B"), help="first sweep value where A < B")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("table1", help="recompute the Platonic-solid code table")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("search", help="exhaustive search over exact-covering systems")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--expect-rate")
    p.add_argument("--expect", help="complete:q, fano or lines:m, optionally *copies")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--only", nargs="+", help="criterion keys, e.g. 1 5 8a")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    if getattr(ns, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return ns.fn(ns)
    except (LRCError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
