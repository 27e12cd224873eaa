"""Checkpointing and table export.

Checkpoints are single self-describing UTF-8 JSON documents.  Compensated
sums are stored as repr() decimal strings (exact float round-trip), and a
sha256 over the canonical serialization of every other field detects
truncation or editing.  Reload and continue is bit-exact versus an
uninterrupted run: confirmation decisions depend only on the frontier, and
the compensated sums are always accumulated in index order.

CSV export schema (stable, regression-pinned):

    k,e_k,pi_e,delta_num,delta_den,lens_len,ratio_next,sum_inv,sum_invlog,ties

with ties semicolon-joined, empty cells for absent values, reals printed
with exactly 12 significant digits, and a single line feed per row.  A
``status`` column is appended only when provisional rows are included, so
confirmed-only regression fixtures never change shape.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from fractions import Fraction
from typing import Optional, Sequence, Union

from .analysis import CONFIRMED, PROVISIONAL, ExtremalRecord
from .hull_engine import ExactSlope, HullState, HullVertex
from .kahan import KahanSum
from .m_variant import MRecord

CHECKPOINT_VERSION = 1

CSV_HEADER = "k,e_k,pi_e,delta_num,delta_den,lens_len,ratio_next,sum_inv,sum_invlog,ties"
M_CSV_HEADER = "k,m_k,pi_m,value,ties,status"


class CheckpointError(Exception):
    pass


class CorruptCheckpointError(CheckpointError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


def fmt12(x: float) -> str:
    """Format with exactly 12 significant digits, positional notation.

    f-string positional precision counts decimal places, not significant
    digits, so the mantissa is taken from scientific notation and the
    decimal point is re-placed by exponent.
    """
    if not math.isfinite(x):
        raise ValueError(f"cannot format non-finite value {x}")
    if x == 0.0:
        return "0.00000000000"
    sign = "-" if x < 0 else ""
    mantissa, _, exp_s = f"{abs(x):.11e}".partition("e")
    digits = mantissa.replace(".", "")
    exp = int(exp_s)
    if exp >= 11:
        body = digits + "0" * (exp - 11)
    elif exp >= 0:
        body = digits[: exp + 1] + "." + digits[exp + 1 :]
    else:
        body = "0." + "0" * (-exp - 1) + digits
    return sign + body


def _canonical_json(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


def save_checkpoint(state: HullState, path: Union[str, os.PathLike], config_echo: Optional[dict] = None) -> None:
    """Write the full hull state; the stack carries confirmed prefix + tail."""
    payload = {
        "format_version": CHECKPOINT_VERSION,
        "limit_processed": state.last_processed,
        "pi_at_limit": state.pi_at_last,
        "provisional_stack": [[v.p, v.pi, list(v.ties)] for v in state.stack],
        "confirmed_count": state.confirmed_len,
        "sum_inv_state": list(state.sum_inv.state_strings()),
        "sum_invlog_state": list(state.sum_invlog.state_strings()),
        "config_echo": dict(config_echo or {}),
    }
    payload["integrity"] = hashlib.sha256(_canonical_json(payload)).hexdigest()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_checkpoint(path: Union[str, os.PathLike]) -> tuple[HullState, dict]:
    """Read a checkpoint; returns (state, config_echo)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptCheckpointError(f"checkpoint corrupt: {exc}") from exc
    if not isinstance(payload, dict) or "integrity" not in payload:
        raise CorruptCheckpointError("checkpoint corrupt: missing integrity field")
    stored = payload.pop("integrity")
    actual = hashlib.sha256(_canonical_json(payload)).hexdigest()
    if stored != actual:
        raise CorruptCheckpointError("checkpoint corrupt: integrity checksum mismatch")
    version = payload.get("format_version")
    if version != CHECKPOINT_VERSION:
        raise CheckpointVersionError(
            f"checkpoint format version {version} not supported (expected {CHECKPOINT_VERSION})"
        )
    try:
        stack = [
            HullVertex(p=int(p), pi=int(pi), ties=[int(t) for t in ties])
            for p, pi, ties in payload["provisional_stack"]
        ]
        state = HullState(
            stack=stack,
            confirmed_len=int(payload["confirmed_count"]),
            last_processed=int(payload["limit_processed"]),
            pi_at_last=int(payload["pi_at_limit"]),
            sum_inv=KahanSum.from_state_strings(*payload["sum_inv_state"]),
            sum_invlog=KahanSum.from_state_strings(*payload["sum_invlog_state"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptCheckpointError(f"checkpoint corrupt: bad field ({exc})") from exc
    if not 0 <= state.confirmed_len <= len(state.stack):
        raise CorruptCheckpointError("checkpoint corrupt: confirmed count out of range")
    return state, payload.get("config_echo", {})


def _cell(value, real: bool = False) -> str:
    if value is None:
        return ""
    if real:
        return fmt12(float(value))
    return str(value)


def _record_row(r: ExtremalRecord, include_status: bool) -> str:
    cells = [
        str(r.k),
        str(r.e),
        str(r.pi_e),
        _cell(r.delta.dpi if r.delta else None),
        _cell(r.delta.dp if r.delta else None),
        _cell(r.lens_len),
        _cell(r.ratio_next, real=True),
        _cell(r.sum_inv, real=True),
        _cell(r.sum_invlog, real=True),
        ";".join(str(t) for t in r.ties),
    ]
    if include_status:
        cells.append(r.status)
    return ",".join(cells)


def export_csv(records: Sequence[ExtremalRecord], path: Union[str, os.PathLike], include_provisional: bool = False) -> None:
    if not records:
        raise ValueError("refusing to export an empty record list")
    header = CSV_HEADER + (",status" if include_provisional else "")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for r in records:
            if not include_provisional and r.status != CONFIRMED:
                continue
            fh.write(_record_row(r, include_provisional) + "\n")


def _record_dict(r: ExtremalRecord) -> dict:
    return {
        "k": r.k,
        "e_k": r.e,
        "pi_e": r.pi_e,
        "delta_num": r.delta.dpi if r.delta else None,
        "delta_den": r.delta.dp if r.delta else None,
        "lens_len": r.lens_len,
        "ratio_next": None if r.ratio_next is None else fmt12(r.ratio_next),
        "sum_inv": None if r.sum_inv is None else fmt12(r.sum_inv),
        "sum_invlog": None if r.sum_invlog is None else fmt12(r.sum_invlog),
        "ties": list(r.ties),
        "status": r.status,
    }


def export_json(records: Sequence[ExtremalRecord], path: Union[str, os.PathLike], include_provisional: bool = False) -> None:
    if not records:
        raise ValueError("refusing to export an empty record list")
    rows = [r for r in records if include_provisional or r.status == CONFIRMED]
    payload = {
        "meta": {
            "format_version": CHECKPOINT_VERSION,
            "record_count": len(rows),
            "confirmed_count": sum(1 for r in rows if r.status == CONFIRMED),
        },
        "records": [_record_dict(r) for r in rows],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def export(records: Sequence[ExtremalRecord], fmt: str, path: Union[str, os.PathLike], include_provisional: bool = False) -> None:
    if fmt == "csv":
        export_csv(records, path, include_provisional)
    elif fmt == "json":
        export_json(records, path, include_provisional)
    else:
        raise ValueError(f"unknown export format {fmt!r}")


def _parse_row(cells: list[str], has_status: bool) -> ExtremalRecord:
    if has_status:
        *cells, status = cells
    else:
        status = CONFIRMED
    (k, e, pi_e, dnum, dden, lens_len, ratio, sum_inv, sum_invlog, ties) = cells
    return ExtremalRecord(
        k=int(k),
        e=int(e),
        pi_e=int(pi_e),
        delta=ExactSlope(int(dnum), int(dden)) if dnum else None,
        lens_len=int(lens_len) if lens_len else None,
        ratio_next=float(ratio) if ratio else None,
        ties=tuple(int(t) for t in ties.split(";")) if ties else (),
        status=status,
        sum_inv=float(sum_inv) if sum_inv else None,
        sum_invlog=float(sum_invlog) if sum_invlog else None,
    )


def parse_export(path: Union[str, os.PathLike]) -> list[ExtremalRecord]:
    """Read back a CSV or JSON export produced by this module."""
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
        if first.lstrip().startswith("{"):
            fh.seek(0)
            payload = json.load(fh)
            records = []
            for d in payload["records"]:
                records.append(
                    ExtremalRecord(
                        k=d["k"],
                        e=d["e_k"],
                        pi_e=d["pi_e"],
                        delta=ExactSlope(d["delta_num"], d["delta_den"]) if d["delta_num"] is not None else None,
                        lens_len=d["lens_len"],
                        ratio_next=None if d["ratio_next"] is None else float(d["ratio_next"]),
                        ties=tuple(d["ties"]),
                        status=d["status"],
                        sum_inv=None if d["sum_inv"] is None else float(d["sum_inv"]),
                        sum_invlog=None if d["sum_invlog"] is None else float(d["sum_invlog"]),
                    )
                )
            return records
        header = first.rstrip("\n")
        if header not in (CSV_HEADER, CSV_HEADER + ",status"):
            raise ValueError(f"unrecognized export header: {header!r}")
        has_status = header.endswith(",status")
        records = []
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            records.append(_parse_row(line.split(","), has_status))
        return records


def export_m_csv(records: Sequence[MRecord], path: Union[str, os.PathLike]) -> None:
    if not records:
        raise ValueError("refusing to export an empty record list")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(M_CSV_HEADER + "\n")
        for r in records:
            value = Fraction(r.p, r.pi)
            cells = [
                str(r.k),
                str(r.p),
                str(r.pi),
                f"{value.numerator}/{value.denominator}",
                ";".join(str(t) for t in r.ties),
                r.status,
            ]
            fh.write(",".join(cells) + "\n")
