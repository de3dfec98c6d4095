"""Command-line front end.

    subsetsums count --group 4 --h 2 --method all
    subsetsums verify --group 8 --group 2,2,2
    subsetsums bounds --max-order 24
    subsetsums ratio-table --group 16 --group 24 --h 8
    subsetsums export-code --group 4 --h 2 --a 1

Output goes to ``--out`` if given, else to a file in ``$SUBSETSUMS_OUT_DIR``
if that is set, else to stdout.  Exit status: 0 success, 1 a check or
cross-method comparison failed, 2 bad arguments or limits.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bounds, codes, harness
from .counting import (
    DEFAULT_DP_LIMIT,
    DEFAULT_ENUM_LIMIT,
    CountTable,
    LimitExceeded,
    count_brute_force,
    count_dp,
    count_via_recurrence,
)
from .group import GroupError, GroupSpec, abelian_groups_upto, parse_group, spec_string

OUT_DIR_ENV = "SUBSETSUMS_OUT_DIR"


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None, default_name: str) -> None:
    if out:
        path = Path(out)
    elif os.environ.get(OUT_DIR_ENV):
        path = Path(os.environ[OUT_DIR_ENV]) / default_name
    else:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _groups(args) -> list[GroupSpec]:
    groups = [parse_group(s) for s in args.group or []]
    if getattr(args, "max_order", None):
        groups += abelian_groups_upto(args.max_order)
    if not groups:
        raise UsageError("no group given (use --group or --max-order)")
    return groups


def _h_range(args, G: GroupSpec, lo: int, hi: int) -> list[int]:
    """Requested h values, defaulting to [lo, hi]; outside it needs the override flag."""
    if args.h is not None:
        hs = [args.h]
    else:
        start = args.h_min if args.h_min is not None else lo
        stop = args.h_max if args.h_max is not None else hi
        hs = list(range(start, stop + 1))
    for h in hs:
        if not 0 <= h <= G.n:
            raise UsageError(f"h={h} outside [0, {G.n}] for group {spec_string(G)}")
        if not lo <= h <= hi and not args.allow_out_of_range:
            raise UsageError(f"h={h} outside [{lo}, {hi}] for group {spec_string(G)}; "
                             "pass --allow-out-of-range to override")
    return hs


def _suffix(args) -> str:
    return "json" if args.format == "json" else "csv"


def cmd_count(args) -> int:
    (G,) = _groups(args)[:1]
    hs = _h_range(args, G, 0, G.n)
    hmax = max(hs)
    tables = {}
    if args.method in ("dp", "all"):
        tables["dp"] = count_dp(G, hmax, args.dp_limit).counts
    if args.method in ("brute", "all"):
        rows = {h: count_brute_force(G, h, args.enum_limit) for h in hs}
        tables["brute"] = tuple(rows.get(h, ()) for h in range(hmax + 1))
    if args.method in ("recurrence", "all"):
        tables["recurrence"] = count_via_recurrence(G, hmax).counts
    names = list(tables)
    ref = tables[names[0]]
    for other in names[1:]:
        for h in hs:
            for a, (u, v) in enumerate(zip(ref[h], tables[other][h])):
                if u != v:
                    print(f"methods disagree ({names[0]} vs {other}) at h={h}, a={a}: {u} != {v}",
                          file=sys.stderr)
                    return 1
    rows = tuple(ref[h] if h in hs else () for h in range(hmax + 1))
    table = CountTable(G, hmax, rows)
    text = table.to_json(hs) if args.format == "json" else table.to_csv(hs)
    _emit(text, args.out, f"count_{spec_string(G).replace(',', 'x')}.{_suffix(args)}")
    return 0


def cmd_verify(args) -> int:
    cfg = harness.VerifyConfig(enum_limit=args.enum_limit, dp_limit=args.dp_limit,
                               exact_limit=args.exact_limit, seed=args.seed)
    report = harness.VerifyReport()
    for G in _groups(args):
        harness.verify_group(G, cfg, report)
    _emit(report.to_json(), args.out, "verify.json")
    failed = [c for c in report.checks if c.verdict == "fail"]
    for c in failed:
        print(f"FAIL {c.name} {c.inputs} {c.detail}", file=sys.stderr)
    return 1 if failed else 0


def cmd_bounds(args) -> int:
    reports = []
    for G in _groups(args):
        if G.n < 2:
            continue
        hs = _h_range(args, G, 2, G.n // 2 + 1)
        table = count_dp(G, max(hs), args.dp_limit)
        for h in hs:
            if args.allow_out_of_range and h < 2:
                continue
            reports.append(bounds.check_deviation_bound(G, h, table, args.allow_out_of_range))
    text = bounds.reports_to_json(reports) if args.format == "json" else bounds.reports_to_csv(reports)
    _emit(text, args.out, f"bounds.{_suffix(args)}")
    return 0 if all(r.holds for r in reports) else 1


def cmd_ratio_table(args) -> int:
    rows = []
    for G in _groups(args):
        hs = _h_range(args, G, 4, G.n // 2 + 1)
        rows += harness.ratio_rows(G, hs, dp_limit=args.dp_limit)
    rows.sort(key=lambda r: (r.n, r.h))
    text = (harness.ratio_rows_to_json(rows) if args.format == "json"
            else harness.ratio_rows_to_csv(rows))
    _emit(text, args.out, f"ratio_table.{_suffix(args)}")
    return 0


def cmd_export_code(args) -> int:
    (G,) = _groups(args)[:1]
    if args.h is None:
        raise UsageError("export-code needs --h")
    if not 0 <= args.h <= G.n:
        raise UsageError(f"h={args.h} outside [0, {G.n}]")
    book = codes.build_codebook(G, args.h, args.a, args.enum_limit)
    dist = codes.min_pairwise_hamming(book, seed=args.seed)
    text = book.to_json(dist) if args.format == "json" else book.to_text(dist)
    suffix = "json" if args.format == "json" else "txt"
    name = f"code_{spec_string(G).replace(',', 'x')}_h{args.h}_a{args.a}.{suffix}"
    _emit(text, args.out, name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subsetsums", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json")):
        p.add_argument("--group", action="append", help="cyclic orders, e.g. 4 or 2,2,2 (repeatable)")
        p.add_argument("--max-order", type=int, help="add every abelian group of order <= N")
        p.add_argument("--h", type=int)
        p.add_argument("--h-min", type=int)
        p.add_argument("--h-max", type=int)
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out")
        p.add_argument("--seed", type=int, default=codes.DEFAULT_SEED)
        p.add_argument("--enum-limit", type=int, default=DEFAULT_ENUM_LIMIT)
        p.add_argument("--dp-limit", type=int, default=DEFAULT_DP_LIMIT)
        p.add_argument("--exact-limit", type=int, default=bounds.DEFAULT_EXACT_LIMIT)
        p.add_argument("--allow-out-of-range", action="store_true")
        return p

    p = common(sub.add_parser("count", help="count table for one group"))
    p.add_argument("--method", choices=("brute", "dp", "recurrence", "all"), default="dp")
    p.set_defaults(func=cmd_count)

    p = common(sub.add_parser("verify", help="run the property suite"), formats=("json",))
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("bounds", help="deviation-bound sweep"))
    p.set_defaults(func=cmd_bounds)

    p = common(sub.add_parser("ratio-table", help="min/max ratios with 1 - X(h)"))
    p.set_defaults(func=cmd_ratio_table)

    p = common(sub.add_parser("export-code", help="write F_a(h) as a constant-weight code"),
               formats=("text", "json"))
    p.add_argument("--a", type=int, default=0, help="target sum as a canonical index")
    p.set_defaults(func=cmd_export_code)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GroupError, UsageError, LimitExceeded, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
