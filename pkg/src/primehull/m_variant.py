"""Extremal primes of the average-gap function M(x) = x / pi(x).

Upper convex hull over the discrete points (p, p/pi(p)) at primes p.  The
y-coordinates are rationals, so every hull decision cross-multiplies
denominators and compares integers; nothing is ever rounded.  Cross terms
reach ~p^2 pi^3 (about 2^140 at the 1e9 cap), comfortably exact in
arbitrary-width integers.

Confirmation rule (conservative, integer-exact): let u -> v be a hull edge
with slope s = (M(v) - M(u)) / (v.p - u.p) and let x be the sieve frontier
(every prime <= x processed).  Since pi is nondecreasing, any later point
t > x has M(t) = t/pi(t) <= t/pi(x).  If

    s > 0,    s * pi(x) >= 1,    and    ell(x) > x / pi(x)

where ell is the edge line extended, then for t > x

    ell(t) - t/pi(x) = [ell(x) - x/pi(x)] + (t - x)(s - 1/pi(x)) > 0,

so no future point can reach the extended edge and v can never be popped.
All three conditions are monotone in x, so confirmations never depend on
where segment boundaries fall.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .hull_engine import EQUAL, GREATER, LESS
from .prime_stream import LimitTooLargeError, SieveConfig, iter_prime_blocks

M_MAX_LIMIT = 10**9

CONFIRMED = "confirmed"
PROVISIONAL = "provisional"


class MPoint(NamedTuple):
    p: int
    pi: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.pi)


def m_slope_compare(a: MPoint, b: MPoint, c: MPoint) -> int:
    """Exact ordering of slope(a,b) vs slope(b,c) for M-points.

    slope(a,b) = (b.p*a.pi - a.p*b.pi) / (a.pi * b.pi * (b.p - a.p)); the
    shared positive factor b.pi cancels from both sides of the comparison.
    """
    if not a.p < b.p < c.p:
        raise ValueError(f"points must be strictly ordered, got {a.p}, {b.p}, {c.p}")
    lhs = (b.p * a.pi - a.p * b.pi) * c.pi * (c.p - b.p)
    rhs = (c.p * b.pi - b.p * c.pi) * a.pi * (b.p - a.p)
    if lhs < rhs:
        return LESS
    if lhs > rhs:
        return GREATER
    return EQUAL


@dataclass
class MVertex:
    p: int
    pi: int
    ties: list[int] = field(default_factory=list)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.pi)


@dataclass
class MHullState:
    stack: list[MVertex] = field(default_factory=list)
    confirmed_len: int = 0
    last_processed: int = 1
    pi_at_last: int = 0

    def push(self, p: int, pi: int) -> None:
        if p <= self.last_processed:
            raise ValueError(f"point {p} arrives at or before frontier {self.last_processed}")
        ties: list[int] = []
        first_pop = True
        while len(self.stack) >= 2:
            cmp = m_slope_compare(
                MPoint(self.stack[-2].p, self.stack[-2].pi),
                MPoint(self.stack[-1].p, self.stack[-1].pi),
                MPoint(p, pi),
            )
            if cmp == GREATER:
                break
            if len(self.stack) <= self.confirmed_len:
                raise AssertionError(
                    f"confirmed vertex {self.stack[-1].p} would be popped by {p}; "
                    "confirmation rule violated"
                )
            popped = self.stack.pop()
            if cmp == EQUAL:
                ties = popped.ties + [popped.p] + ties
            else:
                if first_pop:
                    ties = []
            first_pop = False
        self.stack.append(MVertex(p=p, pi=pi, ties=ties))
        self.last_processed = p
        self.pi_at_last = pi

    def confirm_through(self, x: int) -> None:
        """Advance the confirmed prefix using the frontier x (primes <= x done)."""
        if x < self.last_processed:
            raise ValueError(f"frontier {x} behind last processed {self.last_processed}")
        self.last_processed = x
        pi_x = self.pi_at_last
        if pi_x == 0:
            return
        if self.confirmed_len == 0 and self.stack and self.stack[0].p == 2:
            # The leftmost point is a permanent hull anchor: pops only ever
            # remove the top of a stack of length >= 2.
            self.confirmed_len = 1
        while self.confirmed_len < len(self.stack) and self.confirmed_len >= 1:
            u = self.stack[self.confirmed_len - 1]
            v = self.stack[self.confirmed_len]
            s_num = v.p * u.pi - u.p * v.pi
            dp = v.p - u.p
            s_den = u.pi * v.pi * dp
            if not s_num > 0:
                break
            if not s_num * pi_x >= s_den:
                break
            # ell(x) > x/pi(x), cleared of denominators (all positive):
            lhs = v.p * s_den * pi_x + s_num * (x - v.p) * v.pi * pi_x
            rhs = x * v.pi * s_den
            if not lhs > rhs:
                break
            self.confirmed_len += 1


@dataclass(frozen=True)
class MRecord:
    k: int
    p: int
    pi: int
    value: Fraction
    status: str
    ties: tuple[int, ...]


@dataclass(frozen=True)
class MComputeResult:
    records: list[MRecord]
    state: MHullState


def records_from_m_state(state: MHullState) -> list[MRecord]:
    out = []
    for i, v in enumerate(state.stack):
        out.append(
            MRecord(
                k=i + 1,
                p=v.p,
                pi=v.pi,
                value=Fraction(v.p, v.pi),
                status=CONFIRMED if i < state.confirmed_len else PROVISIONAL,
                ties=tuple(v.ties),
            )
        )
    return out


def compute_m_extremal(limit: int, segment_size: Optional[int] = None) -> MComputeResult:
    """Stream primes to `limit` and build the M hull with exact arithmetic."""
    if limit > M_MAX_LIMIT:
        raise LimitTooLargeError(
            f"M-variant limit {limit} exceeds supported maximum {M_MAX_LIMIT}"
        )
    kwargs = {} if segment_size is None else {"segment_size": segment_size}
    cfg = SieveConfig(limit=limit, **kwargs)
    state = MHullState()
    for primes, pis, high in iter_prime_blocks(cfg):
        for p, q in zip(primes.tolist(), pis.tolist()):
            state.push(p, q)
        state.confirm_through(high)
    return MComputeResult(records=records_from_m_state(state), state=state)


def _vertex_primes(records: Iterable) -> list[int]:
    out = []
    for r in records:
        p = getattr(r, "e", None)
        out.append(r.p if p is None else p)
    return out


@dataclass(frozen=True)
class ComparisonReport:
    common: tuple[int, ...]
    overlap_first: float
    overlap_second: float
    window: int
    ratio_mean_first: Optional[float]
    ratio_mean_second: Optional[float]


def compare_sequences(e_records, m_records) -> ComparisonReport:
    """Overlap and growth-rate comparison of two extremal sequences.

    Ratio means are arithmetic means of successive vertex ratios over the
    shared index window; a window shorter than two vertices yields None
    rather than an error.
    """
    first = _vertex_primes(e_records)
    second = _vertex_primes(m_records)
    if not first or not second:
        raise ValueError("both sequences must be non-empty")
    common = tuple(sorted(set(first) & set(second)))
    window = min(len(first), len(second))

    def ratio_mean(seq: list[int]) -> Optional[float]:
        if window < 2:
            return None
        ratios = [seq[i + 1] / seq[i] for i in range(window - 1)]
        return sum(ratios) / len(ratios)

    return ComparisonReport(
        common=common,
        overlap_first=len(common) / len(first),
        overlap_second=len(common) / len(second),
        window=window,
        ratio_mean_first=ratio_mean(first),
        ratio_mean_second=ratio_mean(second),
    )


def first_divergence(e_records, m_records) -> Optional[int]:
    """1-based index of the first position where the vertex primes differ."""
    first = _vertex_primes(e_records)
    second = _vertex_primes(m_records)
    for i, (a, b) in enumerate(zip(first, second)):
        if a != b:
            return i + 1
    if len(first) != len(second):
        return min(len(first), len(second)) + 1
    return None
