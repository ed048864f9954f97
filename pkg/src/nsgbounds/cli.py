"""Command-line front door: membership, bounds, verification, tables."""

import argparse
import json
import math
import os
import sys

from .bounds import (
    DEFAULT_Q_SWEEP,
    bound_report,
    classify_generators,
    differential_sweep,
)
from .errors import ResourceLimit
from .semigroup import TwoGenSemigroup, from_generators, is_member, unique_representation
from .survey import (
    build_gmgen_table,
    build_lgm_table,
    compare_tables,
    gmgen_csv,
    gmgen_json,
    gmgen_text,
    lgm_csv,
    lgm_json,
    lgm_text,
    load_reference,
    selfcheck_lgm,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_gens(text: str) -> tuple[int, ...]:
    try:
        gens = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not gens:
        raise argparse.ArgumentTypeError("at least one generator is required")
    if any(g <= 0 for g in gens):
        raise argparse.ArgumentTypeError("generators must be positive")
    if math.gcd(*gens) != 1:
        raise argparse.ArgumentTypeError(f"generators {list(gens)} are not coprime")
    return gens


def _parse_q_list(text: str) -> tuple[int, ...]:
    try:
        qs = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if any(q < 1 for q in qs):
        raise argparse.ArgumentTypeError("q values must be positive")
    return qs


def _parse_genus_range(text: str) -> range:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or a single genus, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad genus range {text!r}")
    return range(lo, hi + 1)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("NSG_WORKERS", "1")))
    except ValueError:
        return 1


def build_parser() -> _Parser:
    parser = _Parser(prog="nsgbounds",
                     description="Bounds on rational places from Weierstrass semigroup data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("member", parents=[], help="membership test")
    p.add_argument("--gens", type=_parse_gens, required=True,
                   help="comma-separated coprime generators")
    p.add_argument("--value", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("bounds", help="all bounds for one (semigroup, q) pair")
    p.add_argument("--gens", type=_parse_gens, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("auto", "generic", "sum", "closed"), default="auto")
    p.add_argument("--check", action="store_true",
                   help="re-verify the set-difference bound by full scan")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="differential sweep of the three bound computations")
    p.add_argument("--a-max", type=int, default=30)
    p.add_argument("--b-max", type=int, default=60)
    p.add_argument("--q-list", type=_parse_q_list,
                   default=DEFAULT_Q_SWEEP, help="comma-separated q values")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("table", help="statistics tables over genus populations")
    p.add_argument("kind", choices=("lgm", "gmgens"))
    p.add_argument("--genus", type=_parse_genus_range, default=range(2, 19),
                   help="inclusive range A..B (default 2..18)")
    p.add_argument("--q", type=_parse_q_list, default=(2, 3, 9, 16, 256),
                   help="q values for the lgm table")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers (default: NSG_WORKERS or 1)")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="seed for --selfcheck sampling")
    p.add_argument("--selfcheck", action="store_true",
                   help="re-verify sampled coincidence flags by full scans")
    p.add_argument("--reference", default=None, metavar="PATH|auto",
                   help="compare against a reference CSV (tolerance: one final-digit ulp)")

    return parser


def _cmd_member(args) -> int:
    S = from_generators(args.gens)
    member = is_member(S, args.value)
    rep = None
    if len(S.min_generators) == 2:
        two = TwoGenSemigroup(*S.min_generators)
        rep = unique_representation(two, args.value)
    if args.format == "json":
        payload = {"gens": list(args.gens), "value": args.value, "member": member}
        if rep is not None:
            payload["representation"] = {"m": rep[0], "n": rep[1],
                                         "a": S.min_generators[0], "b": S.min_generators[1]}
        print(json.dumps(payload))
    else:
        if member and rep is not None:
            a, b = S.min_generators
            print(f"member, {args.value} = {rep[0]}*{a} + {rep[1]}*{b}")
        elif member:
            print("member")
        else:
            print("not a member")
    return EXIT_OK


def _cmd_bounds(args, parser) -> int:
    S = from_generators(args.gens)
    if args.method in ("sum", "closed") and len(S.min_generators) != 2:
        parser.error(f"--method {args.method} requires exactly 2 minimal generators "
                     f"(got {list(S.min_generators)})")
    report = bound_report(S, args.q, method=args.method, check=args.check)
    cls = classify_generators(S, args.q)
    if args.format == "json":
        print(json.dumps({
            "gens": list(S.min_generators),
            "genus": S.genus,
            "conductor": S.conductor,
            "q": report.q,
            "lewittes": report.lewittes,
            "serre": report.serre,
            "gm": report.gm,
            "gm_method": report.gm_method.value,
            "coincide": report.coincide,
            "sufficient_condition": report.sufficient_condition_holds,
            "gm_generators": list(cls.gm_generators),
            "non_gm_generators": list(cls.non_gm_generators),
            "reduced_index_set": list(cls.reduced_index_set),
        }))
    else:
        gens = ",".join(str(g) for g in S.min_generators)
        print(f"semigroup <{gens}>  genus {S.genus}  conductor {S.conductor}")
        print(f"q        : {report.q}")
        print(f"lewittes : {report.lewittes}")
        print(f"serre    : {report.serre}")
        print(f"gm       : {report.gm}  (method {report.gm_method.value})")
        print(f"coincide : {'yes' if report.coincide else 'no'}")
        print(f"sufficient condition: {'yes' if report.sufficient_condition_holds else 'no'}")
        print(f"gm generators: {list(cls.gm_generators)}  "
              f"non-gm: {list(cls.non_gm_generators)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    cases, mismatches = differential_sweep(args.a_max, args.b_max, args.q_list,
                                           inject_fault=args.inject_fault)
    if mismatches:
        a, b, q, closed, summed, generic = mismatches[0]
        print(f"MISMATCH a={a} b={b} q={q}: closed={closed} sum={summed} "
              f"generic={generic} ({len(mismatches)} total)", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"all agree ({cases} cases)")
    return EXIT_OK


def _render_table(kind, rows, q_list, fmt, truncated=False):
    if kind == "lgm":
        if fmt == "csv":
            text = lgm_csv(rows, q_list)
        elif fmt == "json":
            payload = lgm_json(rows, q_list)
            if truncated:
                payload["truncated"] = True
            text = json.dumps(payload, indent=2) + "\n"
        else:
            text = lgm_text(rows, q_list)
    else:
        if fmt == "csv":
            text = gmgen_csv(rows)
        elif fmt == "json":
            payload = gmgen_json(rows)
            if truncated:
                payload["truncated"] = True
            text = json.dumps(payload, indent=2) + "\n"
        else:
            text = gmgen_text(rows)
    if truncated and fmt != "json":
        text += "# truncated: node budget exceeded\n"
    return text


def _cmd_table(args) -> int:
    workers = args.workers if args.workers is not None else _default_workers()
    q_list = tuple(args.q)
    truncated = False
    try:
        if args.kind == "lgm":
            rows = build_lgm_table(args.genus, q_list, workers=workers,
                                   node_budget=args.node_budget)
        else:
            rows = build_gmgen_table(args.genus, workers=workers,
                                     node_budget=args.node_budget)
    except ResourceLimit as exc:
        rows = exc.partial or []
        truncated = True
        print(f"nsgbounds: {exc}", file=sys.stderr)

    text = _render_table(args.kind, rows, q_list, args.format, truncated=truncated)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if truncated:
        return EXIT_RESOURCE

    status = EXIT_OK
    if args.reference is not None:
        if args.reference == "auto":
            ref_text = load_reference(args.kind)
        else:
            with open(args.reference, "r", encoding="utf-8") as fh:
                ref_text = fh.read()
        computed_csv = (lgm_csv(rows, q_list) if args.kind == "lgm" else gmgen_csv(rows))
        compared, deviations = compare_tables(computed_csv, ref_text)
        for genus, col, got, want in deviations:
            print(f"DEVIATION genus={genus} [{col}]: computed {got}, reference {want}",
                  file=sys.stderr)
        if deviations:
            return EXIT_MISMATCH
        print(f"reference match: {compared} cells within one ulp", file=sys.stderr)

    if args.selfcheck and args.kind == "lgm":
        checked, mismatches = selfcheck_lgm(args.genus, q_list, seed=args.seed)
        for genus, q, gens in mismatches:
            print(f"SELFCHECK MISMATCH genus={genus} q={q} gens={list(gens)}",
                  file=sys.stderr)
        if mismatches:
            return EXIT_MISMATCH
        print(f"selfcheck passed on {checked} sampled semigroups", file=sys.stderr)
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "member":
            return _cmd_member(args)
        if args.command == "bounds":
            return _cmd_bounds(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "table":
            return _cmd_table(args)
    except ResourceLimit as exc:
        print(f"nsgbounds: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BrokenPipeError:
        return EXIT_OK
    raise AssertionError("unreachable")


def entry() -> None:
    sys.exit(main())
