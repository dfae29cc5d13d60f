"""Report builders, CSV/JSON rendering, and the row-by-row verify mode.

Rendering rules, fixed so repeated runs are byte-identical:
  * integers and {1,0} words are written verbatim;
  * exact rationals are written as p/q (plain p when the denominator is 1);
  * approximate values (ratios meant for plotting, gap logarithms) are
    written as plain decimals with exactly 15 significant digits;
  * fields never need quoting, the separator is a comma, newline is LF.

Every CSV row is self-contained, so `verify` can re-derive and re-render
each row from its own key columns and fail on any byte difference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import bounds as bnd
from . import residues as res
from . import scan as scn
from .core import DEFAULT_STEP_CAP, descend, stopping_record, trajectory
from .errors import DomainError
from .sequences import (ParitySequence, apply_closed_form, is_parity_prefix,
                        lower_unit_numerator, parse_sequence, sigma, weighted_sum)

SIG_DIGITS = 15


def render_sig(d: Decimal, sig: int = SIG_DIGITS) -> str:
    """Plain decimal string with exactly `sig` significant digits."""
    if d == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = sig
        d = +d
        d = d.quantize(Decimal((0, (1,), d.adjusted() - (sig - 1))))
    return format(d, "f")


def render_ratio(num: int, den: int, sig: int = SIG_DIGITS) -> str:
    """num/den as a `sig`-digit plain decimal."""
    with localcontext() as ctx:
        ctx.prec = sig + 10
        d = Decimal(num) / Decimal(den)
    return render_sig(d, sig)


def render_rational(f: Fraction) -> str:
    """Exact rational as p/q, or plain p for integers."""
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


@dataclass
class Report:
    """A header, per-column kinds for JSON typing, and rendered rows."""

    name: str
    columns: tuple[tuple[str, str], ...]  # (column name, kind: int|str|dec|rat)
    rows: Iterable[list[str]]

    @property
    def header(self) -> str:
        return ",".join(name for name, _ in self.columns)


def write_csv(report: Report, fh) -> int:
    """Write the report as CSV bytes to a binary stream; returns row count."""
    fh.write((report.header + "\n").encode("ascii"))
    count = 0
    for row in report.rows:
        fh.write((",".join(row) + "\n").encode("ascii"))
        count += 1
    return count


def write_jsonl(report: Report, fh) -> int:
    """One JSON object per row; int columns become numbers, the rest strings."""
    count = 0
    for row in report.rows:
        obj = {}
        for (name, kind), cell in zip(report.columns, row):
            obj[name] = int(cell) if kind == "int" and cell != "" else cell
        fh.write((json.dumps(obj, separators=(",", ":")) + "\n").encode("ascii"))
        count += 1
    return count


# ---------------------------------------------------------------- table 1

_TABLE1_COLUMNS = (("i", "int"), ("3i", "int"), ("3i+2", "int"), ("3i+1", "int"),
                   ("12i+3", "int"), ("12i+7", "int"), ("12i+11", "int"),
                   ("marks", "str"))


def _table1_row(i: int) -> list[str]:
    trio = (3 * i, 3 * i + 2, 3 * i + 1)
    marks = " ".join(f"{v}{'r' if v % 4 == 1 else 'b'}" for v in trio if v & 1)
    return [str(i), str(trio[0]), str(trio[1]), str(trio[2]),
            str(12 * i + 3), str(12 * i + 7), str(12 * i + 11), marks]


def table1_report(rows: int) -> Report:
    """The three mod-3 columns and the three hard mod-12 columns, one row
    per i; odd entries are marked r (descends in two steps) or b (needs
    four or more)."""
    if rows < 1:
        raise DomainError(f"rows must be >= 1, got {rows}")
    return Report("table1", _TABLE1_COLUMNS, [_table1_row(i) for i in range(rows)])


# ---------------------------------------------------------------- table 2

_TABLE2_COLUMNS = (("n", "int"), ("q", "str"), ("F", "int"))


def table2_report(max_n: int, q_cap: int = 15) -> Report:
    rows = [[str(n), q.bits if q is not None else "", str(value)]
            for n, _, q, value in res.table2_rows(max_n, q_cap)]
    return Report("table2", _TABLE2_COLUMNS, rows)


# ---------------------------------------------------------------- table 3

_TABLE3_COLUMNS = (("s", "int"), ("r", "int"), ("3r", "int"), ("2s", "int"),
                   ("3^r", "int"), ("2^s", "int"), ("class", "str"),
                   ("m", "int"), ("q", "str"))

_CLASS_ORDER = ("12i+3", "12i+7", "12i+11")


def table3_report(s_min: int, s_max: int, cap: int = res.DEFAULT_CENSUS_CAP) -> Report:
    """Minimal-census rows grouped by length, then by mod-12 class, then m."""
    if s_min < 1 or s_max < s_min:
        raise DomainError(f"need 1 <= s_min <= s_max, got ({s_min}, {s_max})")

    def rows() -> Iterator[list[str]]:
        for s in range(s_min, s_max + 1):
            census = res.enumerate_minimal(s, cap)
            if not census:
                continue
            r = census[0][1].r
            prefix = [str(s), str(r), str(3 * r), str(2 * s), str(3 ** r), str(1 << s)]
            by_class: dict[str, list] = {c: [] for c in _CLASS_ORDER}
            for m, q in census:
                by_class[f"12i+{m % 12}"].append((m, q))
            for label in _CLASS_ORDER:
                for m, q in by_class[label]:
                    yield prefix + [label, str(m), q.bits]

    return Report("table3", _TABLE3_COLUMNS, rows())


# ---------------------------------------------------------------- table 4

_TABLE4_COLUMNS = (("s", "int"), ("r", "int"), ("lower", "dec"), ("ratio", "dec"),
                   ("log3_2", "dec"), ("log10_gap", "dec"))


def _table4_row(s: int, r: int, gap: Decimal, digits: int) -> list[str]:
    with localcontext() as ctx:
        ctx.prec = digits
        l32 = bnd.log3_2(digits)
        lower = l32 * (s - 1) / s
        ratio = Decimal(r) / Decimal(s)
        log10_gap = gap.log10()
    return [str(s), str(r), render_sig(lower), render_sig(ratio),
            render_sig(l32), render_sig(log10_gap)]


def table4_report(s_max: int, digits: int | None = None,
                  s_min: int = bnd.DEFAULT_RECORDS_START) -> Report:
    digits = bnd.default_digits() if digits is None else digits
    records = bnd.ratio_records(s_min, s_max, digits)
    rows = [_table4_row(rec.s, rec.r, rec.gap, digits) for rec in records]
    return Report("table4", _TABLE4_COLUMNS, rows)


# ---------------------------------------------------------------- cycles

_CYCLES_COLUMNS = (("s", "int"), ("r", "int"), ("q", "str"), ("numerator", "int"),
                   ("denominator", "int"), ("m1", "rat"), ("alpha", "rat"),
                   ("m1_upper", "rat"))


def cycles_report(s_max: int, alpha: Fraction | int = 40,
                  cap: int = bnd.DEFAULT_CYCLE_CAP) -> Report:
    alpha = Fraction(alpha)
    rows = []
    for cand in bnd.enumerate_cycle_candidates(s_max, cap):
        upper = bnd.cycle_upper_bound(cand.q.r, cand.q.s, alpha)
        rows.append([str(cand.q.s), str(cand.q.r), cand.q.bits, str(cand.numerator),
                     str(cand.denominator), render_rational(cand.m1),
                     render_rational(alpha), render_rational(upper)])
    return Report("cycles", _CYCLES_COLUMNS, rows)


# ---------------------------------------------------------------- bounds

_BOUNDS_COLUMNS = (("r", "int"), ("s", "int"), ("alpha", "rat"), ("pow_ratio", "dec"),
                   ("m1_upper", "dec"), ("m1_lower", "dec"), ("lower_positive", "int"))


def _bounds_row(r: int, alpha: Fraction, digits: int) -> list[str]:
    s = bnd.unique_s_for_r(r)
    upper = bnd.cycle_upper_bound(r, s, alpha)
    lower = bnd.cycle_lower_bound(r, s, digits)
    return [str(r), str(s), render_rational(alpha),
            render_ratio(3 ** r, 1 << s),
            render_ratio(upper.numerator, upper.denominator),
            render_sig(lower), "1" if lower > 0 else "0"]


def bounds_report(r_max: int, alpha: Fraction | int = 40,
                  digits: int | None = None) -> Report:
    """Cycle-number bound curves for r = 1 .. r_max at each r's unique s."""
    if r_max < 1:
        raise DomainError(f"r must be >= 1, got {r_max}")
    digits = bnd.default_digits() if digits is None else digits
    alpha = Fraction(alpha)
    return Report("bounds", _BOUNDS_COLUMNS,
                  (_bounds_row(r, alpha, digits) for r in range(1, r_max + 1)))


# ---------------------------------------------------------------- scans

_SCAN_COLUMNS = (("n", "int"), ("class", "str"), ("s", "int"), ("r", "int"),
                 ("q", "str"), ("value", "int"), ("capped", "int"))

_FIG2_COLUMNS = (("n", "int"), ("s", "int"), ("r", "int"), ("r_over_s", "dec"),
                 ("pow_ratio", "dec"))

_FIG3_COLUMNS = (("m", "int"), ("s", "int"), ("r", "int"), ("pow_ratio", "dec"),
                 ("sigma", "dec"), ("lower_unit", "dec"), ("alpha_ratio", "dec"),
                 ("F_over_m", "dec"))


def _class_cell(n: int) -> str:
    label = res.classify(n)
    return label.mod12 if label.mod12 is not None else label.mod3


def format_scan_row(row: tuple) -> str:
    n, s, r, _, word, v, capped = row
    return ",".join((str(n), _class_cell(n), str(s), str(r),
                     format(word, "b").zfill(s), str(v), "1" if capped else "0"))


def format_fig2_row(row: tuple) -> str | None:
    n, s, r, _, word, v, capped = row
    if capped or not (n & 1):
        return None
    return ",".join((str(n), str(s), str(r), render_ratio(r, s),
                     render_ratio(3 ** r, 1 << s)))


def format_fig3_row(row: tuple) -> str | None:
    n, s, r, w, word, v, capped = row
    if capped or not (n & 1) or r < 2:
        return None
    unit = lower_unit_numerator(r)
    return ",".join((str(n), str(s), str(r),
                     render_ratio(3 ** r, 1 << s),
                     render_ratio(w, 1 << s),
                     render_ratio(unit, 1 << s),
                     render_ratio(w, unit),
                     render_ratio(v, n)))


_SCAN_KINDS: dict[str, tuple] = {
    "scan": (_SCAN_COLUMNS, format_scan_row),
    "fig2": (_FIG2_COLUMNS, format_fig2_row),
    "fig3": (_FIG3_COLUMNS, format_fig3_row),
}


def scan_to_csv(kind: str, cfg: scn.ScanConfig, out_path: str,
                max_chunks: int | None = None) -> tuple[scn.ScanStats, bool]:
    """Run a checkpointed scan writing one of the scan-backed schemas."""
    columns, formatter = _SCAN_KINDS[kind]
    header = ",".join(name for name, _ in columns)

    def format_row(row: tuple) -> str | None:
        return formatter(row)

    return scn.run_scan(cfg, out_path, header, format_row, max_chunks)


# ---------------------------------------------------------------- single records

_STOP_COLUMNS = (("n", "int"), ("s", "int"), ("r", "int"), ("q", "str"),
                 ("value", "int"))

_TRAJ_COLUMNS = (("n", "int"), ("step", "int"), ("value", "int"), ("parity", "int"))

_SEQ_COLUMNS = (("q", "str"), ("s", "int"), ("r", "int"), ("weighted_sum", "int"),
                ("sigma", "rat"))

_SEQ_APPLY_COLUMNS = _SEQ_COLUMNS + (("n", "int"), ("value", "rat"),
                                     ("exact", "int"), ("prefix_match", "int"))


def stop_report(n: int, step_cap: int = DEFAULT_STEP_CAP) -> Report:
    rec = stopping_record(n, step_cap)
    row = [str(rec.n), str(rec.s), str(rec.r), rec.q.bits, str(rec.value)]
    return Report("stop", _STOP_COLUMNS, [row])


def traj_report(n: int, limit: int) -> Report:
    rows = [[str(n), str(i), str(v), str(b)]
            for i, (v, b) in enumerate(trajectory(n, limit), 1)]
    return Report("traj", _TRAJ_COLUMNS, rows)


def seq_report(text: str, apply_n: int | None = None) -> Report:
    q = parse_sequence(text)
    base = [q.bits, str(q.s), str(q.r), str(weighted_sum(q)),
            render_rational(sigma(q))]
    if apply_n is None:
        return Report("seq", _SEQ_COLUMNS, [base])
    out = apply_closed_form(q, apply_n)
    row = base + [str(apply_n), render_rational(out.value),
                  "1" if out.exact else "0",
                  "1" if is_parity_prefix(q, apply_n) else "0"]
    return Report("seq", _SEQ_APPLY_COLUMNS, [row])


# ---------------------------------------------------------------- verify

class VerifyError(DomainError):
    """A CSV row does not match its re-derivation."""


def _expect(path: str, line_no: int, got: list[str], want: list[str]) -> None:
    if got != want:
        raise VerifyError(f"{path}:{line_no}: row {got!r} does not re-derive; "
                          f"expected {want!r}")


def _walk_row(n: int, s: int) -> tuple:
    """Re-derive a raw scan row, capping exactly at the recorded length."""
    s2, r, w, word, v, capped = scn._scan_one(n, s + 1)
    if not capped and s2 == s:
        return n, s2, r, w, word, v, False
    s2, r, w, word, v, capped = scn._scan_one(n, s)
    return n, s2, r, w, word, v, capped


def verify_csv(path: str, digits: int | None = None, q_cap: int = 15) -> int:
    """Re-derive every row of a CSV produced by this package.

    Returns the number of verified rows; raises VerifyError on the first
    mismatch.  Reports parameterized by precision or caps are re-derived at
    the given values, which must match the producing run.
    """
    digits = bnd.default_digits() if digits is None else digits
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise VerifyError(f"{path}: empty file")
    header = lines[0]
    rows = [ln.split(",") for ln in lines[1:]]
    known = [
        ("table1", _TABLE1_COLUMNS, _verify_table1),
        ("table2", _TABLE2_COLUMNS, _verify_table2),
        ("table3", _TABLE3_COLUMNS, _verify_table3),
        ("table4", _TABLE4_COLUMNS, _verify_table4),
        ("cycles", _CYCLES_COLUMNS, _verify_cycles),
        ("bounds", _BOUNDS_COLUMNS, _verify_bounds),
        ("scan", _SCAN_COLUMNS, _verify_scanlike),
        ("fig2", _FIG2_COLUMNS, _verify_scanlike),
        ("fig3", _FIG3_COLUMNS, _verify_scanlike),
        ("stop", _STOP_COLUMNS, _verify_stop),
        ("traj", _TRAJ_COLUMNS, _verify_traj),
        ("seq", _SEQ_COLUMNS, _verify_seq),
        ("seq", _SEQ_APPLY_COLUMNS, _verify_seq),
    ]
    for name, columns, checker in known:
        if header == ",".join(n for n, _ in columns):
            checker(path, name, rows, digits=digits, q_cap=q_cap)
            return len(rows)
    raise VerifyError(f"{path}: unrecognized header {header!r}")


def _verify_table1(path, name, rows, **kw):
    for i, row in enumerate(rows, 2):
        _expect(path, i, row, _table1_row(int(row[0])))


def _verify_table2(path, name, rows, *, q_cap, **kw):
    for i, row in enumerate(rows, 2):
        n = int(row[0])
        s, _, _, word, value = descend(n, DEFAULT_STEP_CAP)
        q = format(word, "b").zfill(s) if s <= q_cap else ""
        _expect(path, i, row, [str(n), q, str(value)])


def _verify_table3(path, name, rows, **kw):
    for i, row in enumerate(rows, 2):
        s, m = int(row[0]), int(row[7])
        word = res._word_if_stops_at(m, s)
        if word is None:
            raise VerifyError(f"{path}:{i}: {m} does not stop in exactly {s} steps")
        q = ParitySequence(format(word, "b").zfill(s))
        want = [str(s), str(q.r), str(3 * q.r), str(2 * s), str(3 ** q.r),
                str(1 << s), f"12i+{m % 12}", str(m), q.bits]
        _expect(path, i, row, want)


def _verify_table4(path, name, rows, *, digits, **kw):
    for i, row in enumerate(rows, 2):
        s, r = int(row[0]), int(row[1])
        with localcontext() as ctx:
            ctx.prec = digits + 10
            gap_raw = bnd.log3_2(digits + 10) - Decimal(r) / Decimal(s)
        with localcontext() as ctx:
            ctx.prec = digits
            gap = +gap_raw
        _expect(path, i, row, _table4_row(s, r, gap, digits))


def _verify_cycles(path, name, rows, **kw):
    for i, row in enumerate(rows, 2):
        cand = bnd.cycle_candidate(parse_sequence(row[2]))
        alpha = Fraction(row[6])
        upper = bnd.cycle_upper_bound(cand.q.r, cand.q.s, alpha)
        want = [str(cand.q.s), str(cand.q.r), cand.q.bits, str(cand.numerator),
                str(cand.denominator), render_rational(cand.m1),
                render_rational(alpha), render_rational(upper)]
        _expect(path, i, row, want)


def _verify_bounds(path, name, rows, *, digits, **kw):
    for i, row in enumerate(rows, 2):
        _expect(path, i, row, _bounds_row(int(row[0]), Fraction(row[2]), digits))


def _verify_scanlike(path, name, rows, **kw):
    formatter = _SCAN_KINDS[name][1]
    key = {"scan": (0, 2), "fig2": (0, 1), "fig3": (0, 1)}[name]
    for i, row in enumerate(rows, 2):
        n, s = int(row[key[0]]), int(row[key[1]])
        line = formatter(_walk_row(n, s))
        if line is None:
            raise VerifyError(f"{path}:{i}: row for {n} should not appear in {name}")
        _expect(path, i, row, line.split(","))


def _verify_stop(path, name, rows, **kw):
    for i, row in enumerate(rows, 2):
        rec = stopping_record(int(row[0]))
        want = [str(rec.n), str(rec.s), str(rec.r), rec.q.bits, str(rec.value)]
        _expect(path, i, row, want)


def _verify_traj(path, name, rows, **kw):
    if not rows:
        return
    n = int(rows[0][0])
    walk = trajectory(n, len(rows))
    for i, (row, (v, b)) in enumerate(zip(rows, walk), 2):
        _expect(path, i, row, [str(n), str(i - 1), str(v), str(b)])
    if len(walk) != len(rows):
        raise VerifyError(f"{path}: expected {len(walk)} steps, file has {len(rows)}")


def _verify_seq(path, name, rows, **kw):
    for i, row in enumerate(rows, 2):
        apply_n = int(row[5]) if len(row) == len(_SEQ_APPLY_COLUMNS) else None
        report = seq_report(row[0], apply_n)
        _expect(path, i, row, next(iter(report.rows)))
