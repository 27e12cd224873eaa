"""Statistics over the extremal prime sequence.

Terminology used throughout: for consecutive extremal primes e_k, e_{k+1}
the half-open interval S_k = [e_k, e_{k+1}) is the k-th lens, delta_k is
the exact slope of the hull edge over it, alpha_k = 1/delta_k its exact
reciprocal (the mean prime gap inside the lens), and ratio_next the float
quotient e_{k+1}/e_k.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .hull_engine import ExactSlope, HullState
from .kahan import KahanSum
from . import lens_bounds
from . import prime_stream

CONFIRMED = "confirmed"
PROVISIONAL = "provisional"


@dataclass(frozen=True)
class ExtremalRecord:
    """One extremal prime with the data of the lens it opens.

    ``delta``, ``lens_len`` and ``ratio_next`` describe the edge to the
    next hull vertex and are None for the final vertex of a run.  ``ties``
    lists the primes lying exactly on that edge (strictly between the two
    vertices), i.e. the slope-equal candidates this lens absorbed.
    ``sum_inv``/``sum_invlog`` are the running compensated sums of 1/e_j
    and 1/ln e_j over confirmed records up to and including k; provisional
    records carry None.
    """

    k: int
    e: int
    pi_e: int
    delta: Optional[ExactSlope]
    lens_len: Optional[int]
    ratio_next: Optional[float]
    ties: tuple[int, ...]
    status: str
    sum_inv: Optional[float] = None
    sum_invlog: Optional[float] = None

    @property
    def alpha(self) -> Optional[ExactSlope]:
        """Exact reciprocal slope dp/dpi (mean gap across the lens)."""
        if self.delta is None:
            return None
        return ExactSlope(self.delta.dp, self.delta.dpi)


def records_from_state(state: HullState, include_provisional: bool = False) -> list[ExtremalRecord]:
    """Materialize ExtremalRecords from a hull state's final stack."""
    stack = state.stack
    n = len(stack) if include_provisional else state.confirmed_len
    records: list[ExtremalRecord] = []
    inv = KahanSum()
    invlog = KahanSum()
    for i in range(n):
        v = stack[i]
        confirmed = i < state.confirmed_len
        if confirmed:
            inv.add(1.0 / v.p)
            invlog.add(1.0 / math.log(v.p))
        if i + 1 < len(stack):
            w = stack[i + 1]
            delta = ExactSlope(w.pi - v.pi, w.p - v.p)
            lens_len: Optional[int] = w.p - v.p
            ratio: Optional[float] = w.p / v.p
            ties = tuple(w.ties)
        else:
            delta = None
            lens_len = None
            ratio = None
            ties = ()
        records.append(
            ExtremalRecord(
                k=i + 1,
                e=v.p,
                pi_e=v.pi,
                delta=delta,
                lens_len=lens_len,
                ratio_next=ratio,
                ties=ties,
                status=CONFIRMED if confirmed else PROVISIONAL,
                sum_inv=inv.value if confirmed else None,
                sum_invlog=invlog.value if confirmed else None,
            )
        )
    return records


@dataclass(frozen=True)
class LensRow:
    k: int
    e: int
    pi_e: int
    delta: ExactSlope
    alpha: ExactSlope
    lens_len: int
    ratio_next: float
    norm_len: float  # lens_len / (sqrt(e) ln^2 e)


def lens_table(records: Sequence[ExtremalRecord]) -> list[LensRow]:
    """Per-lens rows for every record that has a successor."""
    rows = []
    for r in records:
        if r.delta is None:
            continue
        rows.append(
            LensRow(
                k=r.k,
                e=r.e,
                pi_e=r.pi_e,
                delta=r.delta,
                alpha=ExactSlope(r.delta.dp, r.delta.dpi),
                lens_len=r.lens_len,
                ratio_next=r.ratio_next,
                norm_len=r.lens_len / (math.sqrt(r.e) * math.log(r.e) ** 2),
            )
        )
    if not rows:
        raise ValueError("need at least two hull vertices for a lens table")
    return rows


@dataclass(frozen=True)
class ConjectureSums:
    count: int
    sum_inv: float
    sum_invlog: float
    inv_state: tuple[str, str]
    invlog_state: tuple[str, str]


def conjecture_sums(records: Sequence[ExtremalRecord]) -> ConjectureSums:
    """Compensated sums of 1/e_k and 1/ln e_k over confirmed records."""
    inv = KahanSum()
    invlog = KahanSum()
    count = 0
    for r in records:
        if r.status != CONFIRMED:
            continue
        inv.add(1.0 / r.e)
        invlog.add(1.0 / math.log(r.e))
        count += 1
    return ConjectureSums(
        count=count,
        sum_inv=inv.value,
        sum_invlog=invlog.value,
        inv_state=inv.state_strings(),
        invlog_state=invlog.state_strings(),
    )


def pi_epsilon(x: float, records: Sequence[ExtremalRecord]) -> int:
    """Count of confirmed extremal primes <= x (the counting function of E).

    Rejects x beyond the largest confirmed record: the answer there would
    depend on vertices not yet final.
    """
    confirmed = [r.e for r in records if r.status == CONFIRMED]
    if not confirmed:
        raise ValueError("no confirmed records")
    if x < confirmed[0]:
        raise ValueError(f"x={x} is below e_1=2")
    if x > confirmed[-1]:
        raise ValueError(
            f"x={x} exceeds the largest confirmed extremal prime {confirmed[-1]}"
        )
    return bisect_right(confirmed, x)


def exponent_estimate(records: Sequence[ExtremalRecord]) -> list[tuple[int, float]]:
    """(k, ln k / ln e_k) for confirmed records with k >= 2."""
    out = []
    for r in records:
        if r.status != CONFIRMED or r.k < 2:
            continue
        out.append((r.k, math.log(r.k) / math.log(r.e)))
    return out


@dataclass(frozen=True)
class TwinPair:
    k: int
    e: int
    e_next: int
    pi_e: int


def find_twins(records: Sequence[ExtremalRecord]) -> list[TwinPair]:
    """Indices k where consecutive extremal primes are consecutive primes.

    Detected exactly via pi(e_{k+1}) - pi(e_k) == 1; includes k=1 (2, 3).
    Only consecutive confirmed records are inspected.
    """
    out = []
    for a, b in zip(records, records[1:]):
        if a.status != CONFIRMED or b.status != CONFIRMED:
            break
        if b.pi_e - a.pi_e == 1:
            out.append(TwinPair(k=a.k, e=a.e, e_next=b.e, pi_e=a.pi_e))
    return out


def check_concave(points: Sequence[tuple[int, int]]) -> tuple[bool, Optional[int]]:
    """Whether consecutive slopes of a point chain strictly decrease.

    Returns (True, None) or (False, i) with i the index of the middle point
    of the first violating triple. Fewer than three points are vacuously
    concave.
    """
    for i in range(1, len(points) - 1):
        (xa, ya), (xb, yb), (xc, yc) = points[i - 1], points[i], points[i + 1]
        if xa >= xb or xb >= xc:
            raise ValueError("points must be strictly increasing in x")
        if (yb - ya) * (xc - xb) <= (yc - yb) * (xb - xa):
            return False, i
    return True, None


@dataclass(frozen=True)
class EnvelopeReport:
    limit: int
    checked: int
    violations: tuple[int, ...]  # primes p >= 11 with |pi - Li| >= sqrt(p) ln p
    boundary_flags: tuple[int, ...]  # same exceedance among p < 11
    max_ratio: float  # max over p >= 11 of |pi - Li| / (sqrt(p) ln p)
    argmax_p: int


ENVELOPE_BOUNDARY = 11
_ENVELOPE_MAX = 10**9


def verify_envelope(limit: int, segment_size: int = prime_stream.DEFAULT_SEGMENT_SIZE) -> EnvelopeReport:
    """Scan primes p <= limit for |pi(p) - Li(p)| < sqrt(p) ln p.

    Li is accumulated incrementally with fixed-order Gauss-Legendre panels
    per prime gap (one panel is already far below the comparison's needs;
    the worst panel, [2,3], is still accurate to ~1e-18 relative).  The
    inequality genuinely fails at p=2, so primes below 11 are reported as
    boundary flags rather than counted as violations.
    """
    if limit > _ENVELOPE_MAX:
        raise ValueError(f"envelope scan limited to {_ENVELOPE_MAX}, got {limit}")
    if limit < 2:
        raise ValueError("limit must be >= 2")
    cfg = prime_stream.SieveConfig(limit=limit, segment_size=segment_size)
    li_base = KahanSum()  # Li at prev_p
    prev_p = 2.0
    violations: list[int] = []
    boundary: list[int] = []
    max_ratio = -1.0
    argmax_p = 2
    checked = 0
    for primes, pis, _high in prime_stream.iter_prime_blocks(cfg):
        if not len(primes):
            continue
        pf = primes.astype(np.float64)
        lefts = np.concatenate(([prev_p], pf[:-1]))
        incs = lens_bounds.li_gap_increments(lefts, pf)
        # Li at the j-th prime of the block; longdouble keeps the in-block
        # cumulative rounding far below the envelope comparison's needs.
        li_vals = (li_base.value + np.cumsum(incs.astype(np.longdouble))).astype(np.float64)
        bounds = np.sqrt(pf) * np.log(pf)
        ratios = np.abs(pis.astype(np.float64) - li_vals) / bounds
        exceed = ratios >= 1.0
        if np.any(exceed):
            for p in primes[exceed].tolist():
                if p < ENVELOPE_BOUNDARY:
                    boundary.append(p)
                else:
                    violations.append(p)
        big = primes >= ENVELOPE_BOUNDARY
        if np.any(big):
            j = int(np.argmax(np.where(big, ratios, -np.inf)))
            if ratios[j] > max_ratio:
                max_ratio = float(ratios[j])
                argmax_p = int(primes[j])
        li_base.add(math.fsum(incs.tolist()))
        prev_p = float(pf[-1])
        checked += len(primes)
    return EnvelopeReport(
        limit=limit,
        checked=checked,
        violations=tuple(violations),
        boundary_flags=tuple(boundary),
        max_ratio=max_ratio,
        argmax_p=argmax_p,
    )
