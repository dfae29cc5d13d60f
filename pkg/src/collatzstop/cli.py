"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 domain error (bad values, failed
verification, caps), 3 persistence or I/O error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import reports
from .bounds import DEFAULT_RECORDS_START
from .errors import (CheckpointError, CycleDetectedError, DomainError,
                     LimitError)
from .scan import CLASS_FILTERS, ScanConfig


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise UsageError(message)


def _emit(report: reports.Report, args) -> int:
    writer = reports.write_jsonl if getattr(args, "json", False) else reports.write_csv
    if args.out:
        with open(args.out, "wb") as fh:
            writer(report, fh)
    else:
        writer(report, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    return 0


def _add_output_flags(p: Parser) -> None:
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--json", action="store_true",
                   help="emit JSON objects (one per row) instead of CSV")


def _add_scan_flags(p: Parser, *, start: int, end: int, cls: str) -> None:
    p.add_argument("--start", type=int, default=start)
    p.add_argument("--end", type=int, default=end)
    p.add_argument("--class", dest="class_filter", choices=CLASS_FILTERS, default=cls)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", help="ledger file enabling resume")
    p.add_argument("--step-cap", type=int, default=10 ** 5)
    p.add_argument("--chunk-size", type=int, default=10_000)
    p.add_argument("--max-chunks", type=int,
                   help="stop cleanly after this many chunks (resume later)")
    p.add_argument("--out", required=True, help="output CSV path")


def build_parser() -> Parser:
    parser = Parser(prog="collatzstop",
                    description="Exact stopping-time analysis of the halved Collatz map")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stop", help="minimal descent record of one start value")
    p.add_argument("n", type=int)
    p.add_argument("--step-cap", type=int, default=10 ** 6)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.stop_report(a.n, a.step_cap), a))

    p = sub.add_parser("traj", help="iterates of one start value")
    p.add_argument("n", type=int)
    p.add_argument("--limit", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.traj_report(a.n, a.limit), a))

    p = sub.add_parser("seq", help="facts about a parity word, optionally applied to n")
    p.add_argument("q")
    p.add_argument("--apply", type=int, dest="apply_n")
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.seq_report(a.q, a.apply_n), a))

    p = sub.add_parser("table1", help="mod-3 / mod-12 classification rows")
    p.add_argument("--rows", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.table1_report(a.rows), a))

    p = sub.add_parser("table2", help="stopping rows for the hard odd classes")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--q-cap", type=int, default=15,
                   help="blank the word when longer than this")
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.table2_report(a.max_n, a.q_cap), a))

    p = sub.add_parser("table3", help="census of minimal stopping words by length")
    p.add_argument("--s-min", type=int, default=4)
    p.add_argument("--s-max", type=int, default=13)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.table3_report(a.s_min, a.s_max), a))

    p = sub.add_parser("table4", help="record ratios closest to log3(2)")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--s-min", type=int, default=DEFAULT_RECORDS_START)
    p.add_argument("--digits", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(
        reports.table4_report(a.s_max, a.digits, a.s_min), a))

    p = sub.add_parser("cycles", help="integer fixed-point candidates over all words")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--alpha", type=Fraction, default=Fraction(40))
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(reports.cycles_report(a.s_max, a.alpha), a))

    p = sub.add_parser("bounds", help="cycle-number bound curves for r = 1..R")
    p.add_argument("--r", dest="r_max", type=int, required=True)
    p.add_argument("--alpha", type=Fraction, default=Fraction(40))
    p.add_argument("--digits", type=int, default=None)
    _add_output_flags(p)
    p.set_defaults(func=lambda a: _emit(
        reports.bounds_report(a.r_max, a.alpha, a.digits), a))

    p = sub.add_parser("scan", help="stopping records over a range, to CSV")
    _add_scan_flags(p, start=2, end=10 ** 5, cls="all")
    p.set_defaults(func=lambda a: _run_scan("scan", a))

    p = sub.add_parser("fig2", help="step-ratio observations for odd starters, to CSV")
    _add_scan_flags(p, start=3, end=10 ** 6, cls="all")
    p.set_defaults(func=lambda a: _run_scan("fig2", a))

    p = sub.add_parser("fig3", help="sigma, envelope and value ratios, to CSV")
    _add_scan_flags(p, start=7, end=2_400_007, cls="12i+7")
    p.set_defaults(func=lambda a: _run_scan("fig3", a))

    p = sub.add_parser("verify", help="re-derive every row of a CSV produced here")
    p.add_argument("path")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--q-cap", type=int, default=15)
    p.set_defaults(func=_run_verify)

    return parser


def _run_scan(kind: str, args) -> int:
    cfg = ScanConfig(start=args.start, end=args.end, class_filter=args.class_filter,
                     step_cap=args.step_cap, workers=args.workers,
                     checkpoint_path=args.checkpoint, chunk_size=args.chunk_size)
    stats, done = reports.scan_to_csv(kind, cfg, args.out, args.max_chunks)
    ratio = stats.max_alpha_ratio
    print("rows={} max_alpha_ratio={} argmax_n={} complete={}".format(
        stats.count,
        f"{ratio.numerator}/{ratio.denominator}" if ratio is not None else "-",
        stats.argmax_n if stats.argmax_n is not None else "-",
        1 if done else 0))
    for n, kind_ in stats.violations:
        print(f"violation: n={n} constraint={kind_}")
    return 0


def _run_verify(args) -> int:
    count = reports.verify_csv(args.path, args.digits, args.q_cap)
    print(f"verified {count} rows")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, LimitError, CycleDetectedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
