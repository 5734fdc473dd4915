"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 precision error, 4 verification
failure. Working precision (``--digits``) and display precision (5
decimals, or the wide 11/13 layout with ``--wide``) are independent.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, List, Optional, Sequence

from sqtri import __version__
from sqtri.cascade import (
    alpha,
    build_cascade,
    deviation_summary,
    deviations_csv,
    required_digits,
    square_triangular_base,
    verify_conjecture,
)
from sqtri.errors import ArityError, DomainError, PrecisionError, VerificationError
from sqtri.figurate import (
    Source,
    closed_form_digits,
    decimal_part_table,
    intersect_polygonal,
    polygonal_index,
    scan_square_triangulars,
    square_triangular_closed,
    square_triangulars,
    write_bfile,
)
from sqtri.numeric import Number, PrecisionConfig, display, parse_integer, to_decimal_string
from sqtri.predictor import TABLE_DISPLAY, float_mode_demo, iterate_predictions

EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_VERIFY = 4
DEFAULT_DIGITS = 50
FORMATS = ("table", "csv", "json", "bfile")


class UsageError(Exception):
    pass


def _config(args, default_digits: int = DEFAULT_DIGITS) -> PrecisionConfig:
    if args.float_mode:
        if args.digits is not None:
            raise UsageError("--float-mode and --digits are mutually exclusive")
        return PrecisionConfig.binary64()
    return PrecisionConfig(digits=args.digits or default_digits)


def _places(args):
    """(ratio places, difference places)."""
    return (TABLE_DISPLAY.ratio, TABLE_DISPLAY.difference) if args.wide else (5, 5)


def _show(x: Number, places: int) -> str:
    text = display(x, places)
    if x != 0 and text.lstrip("-").strip("0.") == "":
        # would print as zero; keep the magnitude visible
        return f"{float(x):.{places}e}"
    return text


def _render(headers: Sequence[str], rows: List[Sequence], fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(headers)
        w.writerows(rows)
    elif fmt == "json":
        out.write(json.dumps([dict(zip(headers, r)) for r in rows], indent=2) + "\n")
    else:
        cells = [[str(c) for c in headers]] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
        for r in cells:
            out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _integer_only(args, values: Optional[Sequence[int]], out) -> bool:
    if args.format != "bfile":
        return False
    if values is None:
        raise UsageError("bfile output is only valid for integer sequences")
    write_bfile(values, out)
    return True


def cmd_generate(args, out) -> int:
    if args.count < 1:
        raise UsageError("count must be at least 1")
    records = square_triangulars(args.count)
    if args.method == "closed":
        cfg = _config(args, default_digits=max(DEFAULT_DIGITS, closed_form_digits(args.count)))
        for r in records:
            if square_triangular_closed(r.j, cfg) != r.a:
                raise VerificationError(f"closed form disagrees at j={r.j}")
        records = [r.__class__(r.j, r.a, r.m, r.n, Source.CLOSED_FORM) for r in records]
    elif args.method == "scan":
        scanned = scan_square_triangulars(records[-1].m)
        if [s.a for s in scanned] != [r.a for r in records]:
            raise VerificationError("scan disagrees with the recurrence")
        records = scanned
    if _integer_only(args, [r.a for r in records], out):
        return 0
    rows = [(r.j, 2 * r.m + 1, 2 * r.n, r.m, r.n, r.a) for r in records]
    _render(["j", "t", "s", "m", "n", "a"], rows, args.format, out)
    return 0


def cmd_scan(args, out) -> int:
    if args.limit < 1:
        raise UsageError("limit must be at least 1")
    if args.full_table:
        if args.format == "bfile":
            raise UsageError("bfile output is only valid for integer sequences")
        cfg = _config(args)
        places = 11 if args.wide else 4
        rows = [
            (r.k, r.triangular, display(r.root, places), r.integer_part,
             display(r.decimal_part, places))
            for r in decimal_part_table(1, args.limit, cfg)
        ]
        _render(["k", "triangular", "root", "integer part", "decimal part"], rows,
                args.format, out)
        return 0
    found = scan_square_triangulars(args.limit, workers=args.workers)
    if _integer_only(args, [r.a for r in found], out):
        return 0
    _render(["j", "m", "n", "a"], [(r.j, r.m, r.n, r.a) for r in found], args.format, out)
    return 0


def cmd_ratios(args, out) -> int:
    if args.h_max < 1:
        raise UsageError("--h-max must be at least 1")
    cfg = _config(args)
    if args.count < 2 * args.h_max + 1:
        raise ArityError(f"{args.h_max} levels need --count >= {2 * args.h_max + 1}")
    if not cfg.float_mode and args.check_budget:
        need = required_digits(args.count, args.h_max)
        if cfg.digits < need:
            raise PrecisionError(f"--count {args.count} --h-max {args.h_max} needs {need} digits")
    _integer_only(args, None, out)
    base = square_triangular_base(args.count)
    table = build_cascade(base, args.h_max, cfg)
    if args.format == "csv":
        out.write(deviations_csv(table) if args.deviations else table.to_csv())
        return 0
    summary = deviation_summary(table)
    if args.format == "json":
        doc = json.loads(table.to_json())
        doc["alpha"] = to_decimal_string(alpha(cfg))
        doc["ratios"] = [[to_decimal_string(r) for r in table.ratios(h)]
                         for h in range(1, table.h_max + 1)]
        doc["deviation"] = {str(h): to_decimal_string(d) for h, d in summary.items()}
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    rp, dp = _places(args)
    headers = ["j", "a", "a(j+1)/a(j)"]
    for h in range(2, table.h_max + 1):
        headers += [f"|a{h}|", f"|a{h}|(j-1)/|a{h}|(j)"]
    rows = []
    ratios = {h: table.ratios(h) for h in range(1, table.h_max + 1)}
    r1 = ratios[1]
    for j in range(1, table.base_count + 1):
        row = [j, base[j - 1], _show(r1[j - 1], rp) if j - 1 < len(r1) else ""]
        for h in range(2, table.h_max + 1):
            v = table.entry(h, j)
            i = j - table.first_index(h) - 1
            row.append("" if v is None else _show(abs(v), dp))
            row.append(_show(ratios[h][i], 5) if 0 <= i < len(ratios[h]) else "")
        rows.append(row)
    _render(headers, rows, "table", out)
    al = alpha(cfg)
    out.write(f"alpha = 17 + 12*sqrt(2) = {_show(al, rp)}\n")
    for h, d in summary.items():
        out.write(f"h={h}: last ratio {_show(ratios[h][-1], rp)}, |ratio - alpha| = "
                  f"{float(d):.3e}\n")
    return 0


def cmd_predict(args, out) -> int:
    if args.seed < 4:
        raise ArityError("--seed must be at least 4")
    cfg = _config(args)
    seed = [r.a for r in square_triangulars(args.seed)]
    _integer_only(args, None, out)
    steps = iterate_predictions(
        seed,
        args.steps,
        cfg,
        b_ratio=args.b_ratio,
        transcribe=TABLE_DISPLAY if args.transcribe else None,
    )
    if args.format == "json":
        out.write(json.dumps([s.to_dict() for s in steps], indent=2) + "\n")
    elif args.format == "csv":
        if steps:
            dicts = [s.to_dict() for s in steps]
            w = csv.DictWriter(out, fieldnames=list(dicts[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(dicts)
    else:
        for n, s in enumerate(steps, start=args.seed + 1):
            if args.trace:
                out.write(f"step a_{n}:\n")
                for line in s.trace_lines():
                    out.write(f"  {line}\n")
            else:
                out.write(f"a_{n} ~ {display(s.predicted_real, 5)} -> {s.rounded} "
                          f"{'verified' if s.verified else 'NOT verified'}\n")
    if steps and not steps[-1].verified:
        raise VerificationError(
            f"prediction {steps[-1].rounded} is not square-triangular"
        )
    return 0


def cmd_intersect(args, out) -> int:
    if args.m1 < 3 or args.m2 < 3:
        raise UsageError("polygons need at least 3 sides")
    values = intersect_polygonal(args.m1, args.m2, args.limit)
    if _integer_only(args, values, out):
        return 0
    rows = [(i, v, polygonal_index(args.m1, v), polygonal_index(args.m2, v))
            for i, v in enumerate(values, start=1)]
    _render(["i", "value", f"n{args.m1}", f"n{args.m2}"], rows, args.format, out)
    return 0


def cmd_conjecture(args, out) -> int:
    _integer_only(args, None, out)
    cfg = _config(args, default_digits=required_digits(args.depth, args.h_max))
    report = verify_conjecture(args.h_max, args.depth, cfg, cfg.num(args.tol))
    if args.format == "json":
        doc = {
            "depth": report.depth,
            "digits": report.digits,
            "check_digits": report.check_digits,
            "tol": args.tol,
            "levels": [
                {
                    "h": v.h,
                    "last_ratio": to_decimal_string(v.last_ratio),
                    "deviation": to_decimal_string(v.deviation),
                    "pass": v.passed,
                    "monotone_tail": v.monotone,
                }
                for v in report.levels
            ],
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    out.write(f"depth {report.depth}, {report.digits} digits "
              f"(cross-checked at {report.check_digits})\n")
    for v in report.levels:
        out.write(
            f"h={v.h}: last ratio {_show(v.last_ratio, 11)}, deviation "
            f"{float(v.deviation):.3e} {'<' if v.passed else '>='} tol {args.tol}: "
            f"{'pass' if v.passed else 'fail'}; tail deviations "
            f"{'decreasing' if v.monotone else 'not monotone'}\n"
        )
    out.write("numerical evidence only; levels h >= 3 remain conjectural\n")
    return 0


def cmd_float_demo(args, out) -> int:
    _integer_only(args, None, out)
    report = float_mode_demo(args.target, digits=args.digits or DEFAULT_DIGITS)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        for line in report.lines():
            out.write(line + "\n")
    return 0


def _integer_arg(text: str) -> int:
    try:
        return parse_integer(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help=f"working precision in significant digits (default {DEFAULT_DIGITS})")
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--float-mode", action="store_true",
                        help="use binary64 arithmetic instead of decimal")
    common.add_argument("--wide", action="store_true",
                        help="show 11 decimals for ratios and 13 for differences")

    parser = argparse.ArgumentParser(
        prog="sqtri", description="Square-triangular numbers and their ratio cascade."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="list j, t, s, m, n, a")
    p.add_argument("count", type=int)
    p.add_argument("--method", choices=("recurrence", "closed", "scan"), default="recurrence")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("scan", parents=[common], help="brute-force scan of T_1..T_limit")
    p.add_argument("limit", type=_integer_arg)
    p.add_argument("--full-table", action="store_true",
                   help="one row per k with root and decimal part")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("ratios", parents=[common], help="ratio cascade and deviations")
    p.add_argument("count", type=int)
    p.add_argument("--h-max", type=int, default=2)
    p.add_argument("--deviations", action="store_true",
                   help="with --format csv, emit the deviations table")
    p.add_argument("--check-budget", action="store_true",
                   help="refuse digits below the cascade precision budget")
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("predict", parents=[common], help="extrapolate new terms")
    p.add_argument("--seed", type=int, default=6, help="known terms to start from")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--b-ratio", default=None,
                   help="fixed ratio of differences instead of the latest one")
    p.add_argument("--transcribe", action="store_true",
                   help="round each operand to its displayed places first")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("intersect", parents=[common], help="common polygonal numbers")
    p.add_argument("m1", type=int)
    p.add_argument("m2", type=int)
    p.add_argument("limit", type=_integer_arg)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("conjecture", parents=[common], help="probe h-th ratio limits")
    p.add_argument("--h-max", type=int, default=4)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--tol", default="1e-6")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("float-demo", parents=[common], help="binary64 vs decimal prediction")
    p.add_argument("--target", type=int, default=11)
    p.set_defaults(func=cmd_float_demo)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable = args.func
    buf = io.StringIO()
    try:
        _config(args)  # reject bad precision flags for every subcommand
        code = handler(args, buf)
    except (UsageError, DomainError, ArityError) as exc:
        out.write(buf.getvalue())
        print(f"sqtri {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        out.write(buf.getvalue())
        print(f"sqtri {args.command}: precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except VerificationError as exc:
        out.write(buf.getvalue())
        print(f"sqtri {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
