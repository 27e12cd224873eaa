"""Streaming upper convex hull of the prime counting function's graph.

The subgraph of pi (the region under its plot) has a well defined upper
convex boundary; its vertices are the extremal primes e_1 = 2, e_2 = 3,
e_3 = 7, ...  The boundary's vertices can only occur at points (p, pi(p))
with p prime, because pi is a right-continuous step function whose concave
majorant is supported on the staircase's outer corners.

The engine consumes prime points in increasing order and maintains a
monotone-chain stack with two extra obligations on top of the textbook
algorithm:

* exactness: every orientation test is an integer cross product, never a
  float, so hull membership and collinearity decisions are exact;
* finality: a vertex is only promoted from provisional to confirmed once
  an analytic bound on pi proves that no future prime point can pop it.

Ties (points lying exactly on a hull edge) are popped but retained as
annotations on the surviving vertex, implementing "take the largest prime
among slope-equal candidates" for the vertex itself while preserving the
equal-slope predecessors for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import prime_stream
from ._seghull import segment_hull
from .kahan import KahanSum
from .prime_stream import (
    E_SQUARED,
    PrimePoint,
    SieveConfig,
    bound_slope_tight,
    pi_upper_bound_tight,
)

LESS = -1
EQUAL = 0
GREATER = 1


@dataclass(frozen=True)
class ExactSlope:
    """Slope of a hull edge as the unreduced pair (dpi, dp), dp > 0."""

    dpi: int
    dp: int

    def __post_init__(self) -> None:
        if self.dp <= 0:
            raise ValueError("slope denominator must be positive")

    def compare(self, other: "ExactSlope") -> int:
        lhs = self.dpi * other.dp
        rhs = other.dpi * self.dp
        return (lhs > rhs) - (lhs < rhs)

    def __float__(self) -> float:
        return self.dpi / self.dp


def slope_compare(a: PrimePoint, b: PrimePoint, c: PrimePoint) -> int:
    """Exact ordering of slope(a,b) versus slope(b,c) for a.p < b.p < c.p.

    Returns LESS/EQUAL/GREATER via the cross product
    (b.pi - a.pi)(c.p - b.p) ? (c.pi - b.pi)(b.p - a.p).
    """
    if not (a.p < b.p < c.p):
        raise ValueError(f"points must be strictly increasing in p: {a.p}, {b.p}, {c.p}")
    lhs = (b.pi - a.pi) * (c.p - b.p)
    rhs = (c.pi - b.pi) * (b.p - a.p)
    return (lhs > rhs) - (lhs < rhs)


@dataclass
class HullVertex:
    """A hull stack entry: the point plus primes tied on its incoming edge.

    ``ties`` lists the primes that were popped with exactly equal slope
    while this vertex advanced; they lie strictly between the previous hull
    vertex and this one, exactly on the connecting chord.
    """

    p: int
    pi: int
    ties: list[int] = field(default_factory=list)


@dataclass
class HullState:
    """Mutable hull computation state.

    Invariants (checked by the test suite, not at runtime):
    * stack slopes strictly decrease left to right;
    * stack[0] is (2, 1) once any input has been consumed;
    * the first ``confirmed_len`` entries are final and never popped;
    * ``last_processed``/``pi_at_last`` describe the fully sieved frontier.
    """

    stack: list[HullVertex] = field(default_factory=list)
    confirmed_len: int = 0
    last_processed: int = 1
    pi_at_last: int = 0
    sum_inv: KahanSum = field(default_factory=KahanSum)
    sum_invlog: KahanSum = field(default_factory=KahanSum)

    def push(self, p: int, pi: int, pre_ties: Sequence[int] = ()) -> None:
        """Push one point, popping dominated vertices.

        ``pre_ties`` carries ties already collected for this point by a
        segment-level hull; they are anchored to the current stack top and
        are dropped if that anchor is popped strictly below the new chord.
        """
        stack = self.stack
        if stack and p <= stack[-1].p:
            raise ValueError(f"out of order push: {p} after {stack[-1].p}")
        ties = list(pre_ties)
        first_pop = True
        while len(stack) >= 2:
            u = stack[-2]
            v = stack[-1]
            lhs = (v.pi - u.pi) * (p - v.p)
            rhs = (pi - v.pi) * (v.p - u.p)
            if lhs > rhs:
                break
            if len(stack) <= self.confirmed_len:
                raise AssertionError(
                    f"confirmed vertex {v.p} would be popped by {p}; "
                    "confirmation bound unsound"
                )
            stack.pop()
            if lhs == rhs:
                # v lies exactly on the chord to the new point; an equal pop
                # is necessarily the last pop of this push, so v's tie list
                # extends with v itself and any ties carried by the point.
                ties = v.ties + [v.p] + ties
            elif first_pop:
                # The anchor of the pre-collected ties fell strictly below
                # the new chord, taking its collinear points with it.
                ties = []
            first_pop = False
        stack.append(HullVertex(p, pi, ties))

    def confirm_through(self, x: int) -> int:
        """Promote the longest provable prefix; returns newly confirmed count.

        A vertex v with predecessor u and incoming slope s = dpi/dp can
        never be popped once, for the fully sieved frontier x:

            bound_slope_tight(x) < s   and
            pi_upper_bound_tight(x) < u.pi + s * (x - u.p)

        because then the line through u with slope s dominates the pi upper
        bound for every z >= x (the bound's slope keeps decreasing), while
        popping v would require a prime point on or above that line.
        (2,1) and (3,2) are confirmed on sight: no later point can reach
        slope 1 from (2,1), so neither is ever popped.
        """
        stack = self.stack
        newly = 0
        while (
            self.confirmed_len < min(2, len(stack))
            and stack[self.confirmed_len].p == (2, 3)[self.confirmed_len]
        ):
            self._on_confirm(stack[self.confirmed_len])
            newly += 1
        if x <= E_SQUARED:
            return newly
        slope_bound = bound_slope_tight(x)
        pi_bound = pi_upper_bound_tight(x)
        i = self.confirmed_len
        while i < len(stack):
            u = stack[i - 1]
            v = stack[i]
            dpi = v.pi - u.pi
            dp = v.p - u.p
            if not slope_bound * dp < dpi:
                break
            if not pi_bound < u.pi + dpi * (x - u.p) / dp:
                break
            self._on_confirm(v)
            i += 1
            newly += 1
        return newly

    def _on_confirm(self, v: HullVertex) -> None:
        self.confirmed_len += 1
        self.sum_inv.add(1.0 / v.p)
        self.sum_invlog.add(1.0 / math.log(v.p))

    def consume_block(self, primes, pis, high: int) -> None:
        """Merge one sieved segment (aligned arrays) and advance the frontier."""
        if len(primes):
            idx, tie_lo, tie_hi, tie_buf = segment_hull(primes, pis)
            plist = primes.tolist()
            rlist = pis.tolist()
            tie_list = tie_buf.tolist()
            for j, s in enumerate(idx.tolist()):
                ties = [plist[t] for t in tie_list[tie_lo[j] : tie_hi[j]]]
                self.push(plist[s], rlist[s], ties)
            self.pi_at_last = rlist[-1]
        self.last_processed = high
        self.confirm_through(high)


def push_point(state: HullState, q: PrimePoint) -> None:
    """Feed a single prime point into the hull state."""
    state.push(q.p, q.pi, ())
    if q.pi > state.pi_at_last:
        state.pi_at_last = q.pi
    if q.p > state.last_processed:
        state.last_processed = q.p


def try_confirm(state: HullState, x: int) -> int:
    """Run the confirmation sweep declaring x as the fully sieved frontier.

    The caller asserts every prime <= x has been pushed; x may not move
    backwards or fall below the last pushed prime.
    """
    if x < state.last_processed:
        raise ValueError(
            f"confirmation frontier {x} behind sieved frontier {state.last_processed}"
        )
    if state.stack and x < state.stack[-1].p:
        raise ValueError(f"confirmation frontier {x} behind last pushed prime")
    state.last_processed = x
    return state.confirm_through(x)


@dataclass
class ComputeResult:
    state: HullState
    confirmed: list  # list[analysis.ExtremalRecord]
    provisional_tail: list[HullVertex]


def compute_extremal(
    limit: int,
    segment_size: int = prime_stream.DEFAULT_SEGMENT_SIZE,
    state: Optional[HullState] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> ComputeResult:
    """Stream primes up to ``limit`` and return confirmed extremal records.

    With ``state`` given (e.g. loaded from a checkpoint) the run resumes
    from its frontier; results are identical to an uninterrupted run.
    """
    from .analysis import records_from_state

    if state is None:
        state = HullState()
    if limit < state.last_processed:
        raise ValueError(
            f"limit {limit} is below the already processed frontier "
            f"{state.last_processed}"
        )
    if limit > state.last_processed:
        start = max(2, state.last_processed + 1)
        cfg = SieveConfig(
            limit=limit,
            segment_size=segment_size,
            start=start,
            start_pi=state.pi_at_last,
        )
        for primes, pis, high in prime_stream.iter_prime_blocks(cfg):
            state.consume_block(primes, pis, high)
            if progress is not None:
                progress(high, state.pi_at_last)
        state.last_processed = limit
        state.confirm_through(limit)
    records = records_from_state(state)
    return ComputeResult(
        state=state,
        confirmed=records,
        provisional_tail=state.stack[state.confirmed_len :],
    )
