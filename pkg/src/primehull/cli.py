"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 corrupt or mismatched
checkpoint, 4 computational range rejected (overflow-safety caps).
"""

from __future__ import annotations

import argparse
import re
import sys
from decimal import Decimal
from typing import Optional, Sequence

from . import analysis, lens_bounds, persistence
from .hull_engine import compute_extremal
from .m_variant import compute_m_extremal
from .persistence import CheckpointError, fmt12
from .prime_stream import DEFAULT_SEGMENT_SIZE, LimitTooLargeError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECKPOINT = 3
EXIT_RANGE = 4


def parse_limit(text: str) -> int:
    """Accept plain integers plus 10^8, 3*10^9 and 1e8 style spellings."""
    s = text.strip().replace("_", "").replace(" ", "")
    if re.fullmatch(r"\d+", s):
        return int(s)
    m = re.fullmatch(r"(?:(\d+)\*)?(\d+)\^(\d+)", s)
    if m:
        factor = int(m.group(1)) if m.group(1) else 1
        return factor * int(m.group(2)) ** int(m.group(3))
    m = re.fullmatch(r"(\d+(?:\.\d+)?)[eE]\+?(\d+)", s)
    if m:
        value = Decimal(m.group(1)) * (Decimal(10) ** int(m.group(2)))
        if value != value.to_integral_value():
            raise ValueError(f"limit {text!r} is not an integer")
        return int(value)
    raise ValueError(f"cannot parse limit {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primehull",
        description="Extremal primes of the prime counting function's upper hull.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="stream primes and compute extremal records")
    c.add_argument("--limit", required=True, help="sieve limit (e.g. 100000, 10^8, 1e8)")
    c.add_argument("--segment-size", default=None, help="sieve segment size")
    c.add_argument("--checkpoint", default=None, help="checkpoint file to write (and read with --resume)")
    c.add_argument("--resume", action="store_true", help="resume from --checkpoint before extending")
    c.add_argument("--out", default=None, help="export path")
    c.add_argument("--format", default="csv", choices=("csv", "json"), help="export format")
    c.add_argument("--include-provisional", action="store_true", help="add unconfirmed tail rows with a status column")

    a = sub.add_parser("analyze", help="statistics over an exported record table")
    a.add_argument("--in", dest="infile", required=True, help="CSV or JSON export to read")
    a.add_argument("--sums", action="store_true", help="print conjecture partial sums")
    a.add_argument("--twins", action="store_true", help="print consecutive-index twin pairs")
    a.add_argument("--ties", action="store_true", help="print rows with slope ties")
    a.add_argument("--envelope-limit", default=None, help="re-sieve and check |pi - Li| < sqrt(p) ln p up to N")

    l = sub.add_parser("lensbounds", help="tangent-window bounds at given x values")
    l.add_argument("--x-grid", required=True, help="comma-separated x values (e.g. 1e8,1e10,1e12)")
    l.add_argument("--alpha", type=float, default=1.0, help="theta window half-width in (0,1]")
    l.add_argument("--out", default=None, help="write CSV here instead of stdout")

    m = sub.add_parser("mvariant", help="extremal primes of x/pi(x)")
    m.add_argument("--limit", required=True, help="sieve limit (max 10^9)")
    m.add_argument("--out", default=None, help="export path (CSV)")

    return parser


def _cmd_compute(args) -> int:
    try:
        limit = parse_limit(args.limit)
        segment_size = DEFAULT_SEGMENT_SIZE if args.segment_size is None else parse_limit(args.segment_size)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    state = None
    if args.resume:
        if not args.checkpoint:
            print("error: --resume requires --checkpoint", file=sys.stderr)
            return EXIT_USAGE
        try:
            state, _echo = persistence.load_checkpoint(args.checkpoint)
        except CheckpointError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CHECKPOINT
    try:
        result = compute_extremal(limit, segment_size=segment_size, state=state)
    except LimitTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    state = result.state
    if args.checkpoint:
        persistence.save_checkpoint(
            state, args.checkpoint, config_echo={"limit": limit, "segment_size": segment_size}
        )
    records = analysis.records_from_state(state, include_provisional=True)
    confirmed = [r for r in records if r.status == analysis.CONFIRMED]
    if args.out:
        persistence.export(records, args.format, args.out, include_provisional=args.include_provisional)
        print(f"wrote {args.out}")
    print(
        f"limit {limit}: {len(confirmed)} confirmed extremal primes, "
        f"{len(records) - len(confirmed)} provisional"
    )
    if confirmed:
        last = confirmed[-1]
        print(f"last confirmed: k={last.k} e_k={last.e} pi(e_k)={last.pi_e}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    try:
        records = persistence.parse_export(args.infile)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    confirmed = [r for r in records if r.status == analysis.CONFIRMED]
    print(f"{len(records)} records ({len(confirmed)} confirmed)")
    if args.sums:
        sums = analysis.conjecture_sums(records)
        print(f"sum 1/e_k      = {fmt12(sums.sum_inv)}  (k <= {sums.count})")
        print(f"sum 1/ln e_k   = {fmt12(sums.sum_invlog)}  (k <= {sums.count})")
    if args.twins:
        twins = analysis.find_twins(records)
        if twins:
            for t in twins:
                print(f"twin at k={t.k}: ({t.e}, {t.e_next}), pi({t.e}) = {t.pi_e}")
        else:
            print("no twin pairs")
    if args.ties:
        any_ties = False
        for r in records:
            if r.ties:
                any_ties = True
                print(f"k={r.k} e_k={r.e} ties: {';'.join(str(t) for t in r.ties)}")
        if not any_ties:
            print("no ties")
    if args.envelope_limit is not None:
        try:
            limit = parse_limit(args.envelope_limit)
            report = analysis.verify_envelope(limit)
        except LimitTooLargeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RANGE
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(
            f"envelope up to {limit}: {len(report.violations)} violations, "
            f"max |pi - Li|/(sqrt(p) ln p) = {fmt12(report.max_ratio)} "
            f"(boundary cases below {analysis.ENVELOPE_BOUNDARY}: {len(report.boundary_flags)})"
        )
    return EXIT_OK


_LENS_COLUMNS = (
    "x,alpha,v2,v1,v0,theta_minus,theta_plus,h_star_minus,h_star_plus,"
    "h_minus,h_plus,h_width_over_x,status"
)


def _lens_row(x: float, alpha: float) -> str:
    prob = lens_bounds.cubic_coeffs(x)
    cells = [f"{x:.6g}", fmt12(alpha), fmt12(prob.v2), fmt12(prob.v1), fmt12(prob.v0)]
    status = "ok"
    try:
        roots = lens_bounds.solve_theta(x, alpha)
        cells += [
            fmt12(roots.theta_minus),
            fmt12(roots.theta_plus),
            fmt12(roots.h_star_minus),
            fmt12(roots.h_star_plus),
        ]
    except lens_bounds.ThetaPreconditionError:
        status = "window-too-small"
        cells += ["", "", "", ""]
    try:
        exact = lens_bounds.solve_h_exact(x)
        cells += [fmt12(exact.h_minus), fmt12(exact.h_plus), fmt12(exact.width / x)]
    except ValueError:
        status = status if status != "ok" else "no-crossing"
        cells += ["", "", ""]
    cells.append(status)
    return ",".join(cells)


def _cmd_lensbounds(args) -> int:
    try:
        grid = [float(parse_limit(part)) for part in args.x_grid.split(",") if part]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not grid:
        print("error: empty x grid", file=sys.stderr)
        return EXIT_USAGE
    if not 0.0 < args.alpha <= 1.0:
        print(f"error: alpha must be in (0, 1], got {args.alpha}", file=sys.stderr)
        return EXIT_USAGE
    lines = [_LENS_COLUMNS] + [_lens_row(x, args.alpha) for x in grid]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def _cmd_mvariant(args) -> int:
    try:
        limit = parse_limit(args.limit)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = compute_m_extremal(limit)
    except LimitTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    records = result.records
    confirmed = sum(1 for r in records if r.status == "confirmed")
    if args.out:
        persistence.export_m_csv(records, args.out)
        print(f"wrote {args.out}")
    print(f"limit {limit}: {len(records)} hull vertices ({confirmed} confirmed)")
    for r in records[:10]:
        print(f"k={r.k} m_k={r.p} M(m_k)={r.value.numerator}/{r.value.denominator} [{r.status}]")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "compute":
        return _cmd_compute(args)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "lensbounds":
        return _cmd_lensbounds(args)
    if args.command == "mvariant":
        return _cmd_mvariant(args)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
