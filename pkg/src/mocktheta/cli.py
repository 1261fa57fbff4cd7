"""Command-line entry point.

Subcommands: verify-theorem, gauss, units, weil-relations, expand,
identities, discover.  Reports are canonical JSON (sorted keys, fixed
instance ordering, no timestamps), so identical configurations produce
byte-identical artifacts regardless of --jobs.  Exit status is 0 iff every
check in scope passed; invalid parameters exit with a usage error.

If --output names a relative path and MOCKTHETA_OUTPUT_DIR is set, the
report is written inside that directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd
from pathlib import Path

from . import coefficients, discovery, identities, series, weil
from .reporting import canonical_json, envelope

_EXPAND_FUNCTIONS = {
    "phi0": lambda a, b, c, n, order: series.fifth_order_phi0(order),
    "chi0": lambda a, b, c, n, order: series.fifth_order_chi0(order),
    "F0": lambda a, b, c, n, order: series.fifth_order_F0(order),
    "eulerian-M": lambda a, b, c, n, order: series.eulerian_M(a, c, order),
    "rank-R": lambda a, b, c, n, order: series.rank_R(a, c, order),
    "appell-M": lambda a, b, c, n, order: series.appell_M(a, b, c, order),
    "K": lambda a, b, c, n, order: series.kernel_K(a, b, c, n, order),
    "N": lambda a, b, c, n, order: series.series_N(a, b, c, order),
    "epsilon": lambda a, b, c, n, order: series.epsilon(a, b, c),
    "holo-M": lambda a, b, c, n, order: series.holo_M(a, b, c, order),
    "holo-N": lambda a, b, c, n, order: series.holo_N(a, b, c, order),
}


def _level_type(value: str) -> int:
    c = int(value)
    if c < 1 or gcd(c, 6) != 1:
        raise argparse.ArgumentTypeError(
            f"level {c} is invalid: c must be a positive integer coprime to 6")
    return c


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mocktheta",
        description="Exact verification suites and q-series expansions for "
                    "the vector-valued mock theta family.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--output", help="write the report to this path "
                       "(default: stdout)")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("verify-theorem",
                       help="exact alpha/beta translation and kernel checks")
    p.add_argument("--c", type=_level_type, required=True)
    p.add_argument("--exhaustive", action="store_true",
                   help="sweep every h mod 12c^2 in the kernel identity "
                        "(default for c <= 7)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampled off-support h when not exhaustive")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel (a,b) partitions")
    add_common(p)

    p = sub.add_parser("gauss", help="the 12c character-sum lemma")
    p.add_argument("--c", type=_level_type, required=True)
    add_common(p)

    p = sub.add_parser("units", help="cyclotomic-unit normalization checks")
    p.add_argument("--c", type=_level_type, required=True)
    add_common(p)

    p = sub.add_parser("weil-relations",
                       help="S^2, S^4, (ST)^3 relations on the basis")
    p.add_argument("--c", type=_level_type, required=True)
    add_common(p)

    p = sub.add_parser("expand", help="expand any special series")
    p.add_argument("--function", required=True, choices=sorted(_EXPAND_FUNCTIONS))
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--c", type=_level_type, default=1)
    p.add_argument("--n", type=int, default=1, help="kernel index for K")
    p.add_argument("--order", type=Fraction, default=Fraction(20),
                   help="truncation order (rational accepted, e.g. 49/2)")
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = sub.add_parser("identities",
                       help="fifth-order, rank, and Appell/Eulerian suites")
    p.add_argument("--c-list", default="5,7",
                   help="comma-separated levels (default 5,7)")
    p.add_argument("--watson-order", type=int, default=101)
    p.add_argument("--rank-order", type=int, default=50)
    p.add_argument("--count-order", type=int, default=20)
    p.add_argument("--appell-order", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    add_common(p)

    p = sub.add_parser("discover",
                       help="numeric constraint system and nullspace")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p)

    return parser


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        path = Path(out)
        base = os.environ.get("MOCKTHETA_OUTPUT_DIR")
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _report_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"status: {report['status']}"]
    for res in report["results"]:
        if isinstance(res, dict) and "identity" in res:
            lines.append(f"  {res['identity']} (level {res['level']}): "
                         f"{res['status']} "
                         f"[{res['instances_checked']} instances, "
                         f"{len(res['failures'])} failures]")
        elif isinstance(res, dict) and "relation" in res:
            lines.append(f"  {res['relation']} (level {res['level']}): "
                         f"{res['status']}")
        else:
            lines.append(f"  {res}")
    return "\n".join(lines) + "\n"


def _partition_pairs(c: int, jobs: int):
    pairs = [(a, b) for a in range(c) for b in range(c)]
    jobs = max(1, min(jobs, len(pairs)))
    return [pairs[i::jobs] for i in range(jobs)]


def _theorem_chunk(arg):
    c, exhaustive, seed, chunk = arg
    table = coefficients.build_table(c)
    return (
        coefficients.verify_alpha_T(c, table, pairs=chunk),
        coefficients.verify_beta_T(c, table, pairs=chunk),
        coefficients.verify_S_ident(c, table, exhaustive=exhaustive,
                                    seed=seed, pairs=chunk),
    )


def _merge_reports(parts):
    first = parts[0]
    failures = []
    checked = 0
    for r in parts:
        failures.extend(r.failures)
        checked += r.instances_checked
    failures.sort(key=lambda f: tuple(str(f.get(k)) for k in ("a", "b", "h")))
    from .reporting import IdentityReport
    return IdentityReport(first.identity, first.level, checked, failures)


def _cmd_verify_theorem(args) -> int:
    exhaustive = True if args.exhaustive else None
    if args.jobs > 1:
        chunks = _partition_pairs(args.c, args.jobs)
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(_theorem_chunk,
                                    [(args.c, exhaustive, args.seed, ch)
                                     for ch in chunks]))
        reports = [_merge_reports([r[i] for r in results]) for i in range(3)]
    else:
        reports = coefficients.verify_theorem(args.c, exhaustive=exhaustive,
                                              seed=args.seed)
    ok = all(r.ok for r in reports)
    rep = envelope("verify-theorem",
                   {"c": args.c, "exhaustive": bool(args.exhaustive),
                    "seed": args.seed},
                   [r.to_json() for r in reports], ok)
    _emit(args, canonical_json(rep) if args.format == "json"
          else _report_text(rep))
    return 0 if ok else 1


def _cmd_gauss(args) -> int:
    r = coefficients.verify_gauss_lemma(args.c)
    rep = envelope("gauss", {"c": args.c}, [r.to_json()], r.ok)
    _emit(args, canonical_json(rep) if args.format == "json"
          else _report_text(rep))
    return 0 if r.ok else 1


def _cmd_units(args) -> int:
    try:
        r = coefficients.verify_units(args.c)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep = envelope("units", {"c": args.c}, [r.to_json()], r.ok)
    _emit(args, canonical_json(rep) if args.format == "json"
          else _report_text(rep))
    return 0 if r.ok else 1


def _cmd_weil(args) -> int:
    results = weil.weil_relations(args.c)
    ok = all(r["status"] == "pass" for r in results)
    rep = envelope("weil-relations", {"c": args.c}, results, ok)
    _emit(args, canonical_json(rep) if args.format == "json"
          else _report_text(rep))
    return 0 if ok else 1


def _cmd_expand(args) -> int:
    fn = _EXPAND_FUNCTIONS[args.function]
    try:
        s = fn(args.a, args.b, args.c, args.n, args.order)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "csv":
        _emit(args, s.to_csv())
    elif args.format == "text":
        _emit(args, repr(s) + "\n")
    else:
        rep = {
            "schema_version": 1,
            "command": "expand",
            "params": {"function": args.function, "a": args.a, "b": args.b,
                       "c": args.c, "n": args.n,
                       "order": [args.order.numerator, args.order.denominator]},
            "series": s.to_json(),
        }
        _emit(args, canonical_json(rep))
    return 0


def _identities_level(arg):
    c, rank_order, count_order, appell_order = arg
    return (
        identities.verify_rank_identity(c, rank_order),
        identities.verify_rank_counts(c, count_order),
        identities.verify_appell_eulerian(c, appell_order),
    )


def _cmd_identities(args) -> int:
    try:
        c_list = [_level_type(tok) for tok in args.c_list.split(",") if tok]
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports = [identities.verify_watson(args.watson_order)]
    work = [(c, args.rank_order, args.count_order, args.appell_order)
            for c in c_list]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=min(args.jobs, len(work))) as pool:
            for group in pool.map(_identities_level, work):
                reports.extend(group)
    else:
        for w in work:
            reports.extend(_identities_level(w))
    ok = all(r.ok for r in reports)
    rep = envelope("identities",
                   {"c_list": c_list, "watson_order": args.watson_order,
                    "rank_order": args.rank_order,
                    "count_order": args.count_order,
                    "appell_order": args.appell_order},
                   [r.to_json() for r in reports], ok)
    _emit(args, canonical_json(rep) if args.format == "json"
          else _report_text(rep))
    return 0 if ok else 1


def _cmd_discover(args) -> int:
    try:
        result = discovery.discover(args.p, tol=args.tol)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rep = envelope("discover", {"p": args.p, "tol": args.tol}, [result], True)
    _emit(args, canonical_json(rep) if args.format == "json"
          else _report_text(rep))
    return 0


_HANDLERS = {
    "verify-theorem": _cmd_verify_theorem,
    "gauss": _cmd_gauss,
    "units": _cmd_units,
    "weil-relations": _cmd_weil,
    "expand": _cmd_expand,
    "identities": _cmd_identities,
    "discover": _cmd_discover,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
