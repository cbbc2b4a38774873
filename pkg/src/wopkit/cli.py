"""Command-line front end.

Exit codes: 0 success, 2 usage or parameter error, 3 enumeration guard,
4 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import __version__
from .construct import CPT_CLASSES, construct
from .core import to_partition, to_ranking
from .discover import enumerate_templates, facet_scan, infer_rhs
from .enumeration import (
    DEFAULT_VERIFY_GUARD,
    MAX_ENUMERATION_N,
    check_guard,
    count_weak_orders,
    enumerate_weak_orders,
    guard,
)
from .errors import ParameterError, RecordError, ResourceLimitError, WopkitError
from .inequalities import T3_TAGS, Inequality, T_TAGS, WO_TAGS, lift, make_class, wo4_catalog
from .records import SCAN_SCHEMA, dumps_record, loads_records, report_dict
from .verify import affine_rank, facet_report

EXIT_USAGE, EXIT_GUARD, EXIT_INPUT = 2, 3, 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _dump(obj: dict, fh: TextIO) -> None:
    fh.write(json.dumps(obj, indent=2) + "\n")


def cmd_enumerate(args: argparse.Namespace) -> int:
    check_guard(args.n, guard(MAX_ENUMERATION_N))
    with _output(args.out) as fh:
        for w in enumerate_weak_orders(args.n):
            if args.format == "ranks":
                line = ",".join(map(str, to_ranking(w)))
            elif args.format == "bits":
                line = "".join(map(str, w.vector()))
            else:
                line = str(to_partition(w))
            fh.write(line + "\n")
    return 0


def build_inequality(tag: str, n: int, fixed: list[int]) -> Inequality:
    if tag in WO_TAGS:
        if n != 4:
            raise ParameterError(f"{tag} is defined on n=4; use --lift for larger n")
        return next(q for q in wo4_catalog() if q.tag == tag)
    if tag in T_TAGS or tag in T3_TAGS:
        return make_class(tag, n, fixed)
    raise ParameterError(f"unknown class {tag!r}")


def cmd_vi(args: argparse.Namespace) -> int:
    q = build_inequality(args.cls, args.n, args.fixed or [])
    if args.lift is not None:
        q = lift(q, args.lift)
    with _output(args.out) as fh:
        fh.write(dumps_record(q) + "\n")
    if args.porta is not None:
        with _output(args.porta) as fh:
            fh.write(str(q) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise RecordError(f"cannot read {args.input}: {exc.strerror}") from None
    records = loads_records(text)
    limit = guard(DEFAULT_VERIFY_GUARD)
    for q in records:
        check_guard(q.n, limit)
    reports = []
    for q in records:
        start = time.perf_counter()
        report = facet_report(q, structures=args.structures, limit=limit)
        timings = {"seconds": round(time.perf_counter() - start, 6)} if args.timings else None
        reports.append(report_dict(q, report, count_weak_orders(q.n), args.structures, timings))
    with _output(args.out) as fh:
        for body in reports:
            fh.write(json.dumps(body) + "\n")
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    if args.cls not in CPT_CLASSES:
        raise ParameterError(f"no construction procedure for {args.cls!r}; available: {', '.join(CPT_CLASSES)}")
    X = construct(args.cls, args.n, args.fixed or [])
    rank = affine_rank(X)
    with _output(args.out) as fh:
        for w in X.rows:
            fh.write(" ".join(map(str, w.vector())) + "\n")
    summary = {"class": args.cls, "n": args.n, "fixed": args.fixed, "rows": len(X),
               "affine_rank": rank, "full": rank == args.n * (args.n - 1)}
    print(json.dumps(summary), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0


def cmd_discover(args: argparse.Namespace) -> int:
    if args.fixed_count not in (1, 2):
        raise ParameterError("discovery scans 1 or 2 fixed alternatives; use 'vi --class T3-*' for three")
    limit = guard(DEFAULT_VERIFY_GUARD)
    sizes = [args.n] + (args.fit or []) + (args.holdout or [])
    for n in sizes:
        check_guard(n, limit)
    report = facet_scan(args.fixed_count, args.n, jobs=args.jobs, limit=limit).as_dict()
    if args.fit:
        templates = enumerate_templates(args.fixed_count)
        for row, t in zip(report["rows"], templates):
            row["rhs_law"] = infer_rhs(t, args.fit, args.holdout or [], limit).as_dict()
    body = {"schema": SCAN_SCHEMA, "tool": "wopkit", "version": __version__, **report}
    with _output(args.out) as fh:
        _dump(body, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wopkit", description="Weak order polytope toolkit.")
    parser.add_argument("--version", action="version", version=f"wopkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list every weak order on [n]")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("ranks", "bits", "partitions"), default="ranks")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("vi", help="write an inequality record")
    p.add_argument("--class", dest="cls", required=True, help="T1, T2-0..T2-4, T3-1..T3-8 or WO1..WO9")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fixed", type=_int_list, default=[])
    p.add_argument("--lift", type=int, metavar="M", help="zero-pad to [M]")
    p.add_argument("--porta", nargs="?", const="-", metavar="PATH", help="also write a plain-text line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_vi)

    p = sub.add_parser("verify", help="exhaustive validity and facet report for records")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--structures", action="store_true", help="include the ranking-structure census")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a construction matrix and its affine rank")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fixed", type=_int_list, default=[])
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("discover", help="scan digraph templates")
    p.add_argument("--fixed-count", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fit", type=_int_list)
    p.add_argument("--holdout", type=_int_list)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_discover)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"wopkit: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except RecordError as exc:
        print(f"wopkit: malformed input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (WopkitError, ValueError) as exc:
        print(f"wopkit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
