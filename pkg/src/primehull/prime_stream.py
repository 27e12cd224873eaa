"""Segmented prime sieve with an exact running prime counter.

Produces the stream of points (p, pi(p)) consumed by the hull engine.
Segments are sieved with numpy over odd integers only; 2 is special-cased.
The stream is deterministic for a given (start, limit) regardless of
segment size, and supports resuming from any (start, start_pi) frontier.

Also provides the explicit upper bounds on pi(x) used by the vertex
confirmation horizon:

* ``pi_upper_bound`` / ``bound_slope``: the classical bound
  1.25506 * x / ln x, valid for all x > 1 (Rosser and Schoenfeld 1962).
* ``pi_upper_bound_tight`` / ``bound_slope_tight``: a piecewise bound that
  switches to x/ln x * (1 + 1/ln x + 2/ln^2 x + 7.59/ln^3 x) for
  x >= 88789 (Dusart 2018).  The tighter tail shortens the confirmation
  latency by orders of magnitude while remaining unconditional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

MAX_LIMIT = 10**12
MIN_SEGMENT_SIZE = 1024
# Segment spans must keep in-segment hull cross products inside int64:
# (delta pi) * (delta p) < 2^25 * 2^26 = 2^51.
MAX_SEGMENT_SIZE = 1 << 25
DEFAULT_SEGMENT_SIZE = 1 << 20

RS_CONSTANT = 1.25506
DUSART_CUTOFF = 88789
E_SQUARED = math.exp(2.0)


class LimitTooLargeError(ValueError):
    """Requested limit exceeds the supported sieve range."""


class PrimePoint(NamedTuple):
    p: int
    pi: int


@dataclass(frozen=True)
class SieveConfig:
    """Range and segmentation of a sieve run.

    ``start``/``start_pi`` describe the resume frontier: sieving begins at
    ``start`` (inclusive) with ``start_pi`` primes already counted strictly
    below it.  A fresh run uses start=2, start_pi=0.
    """

    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    start: int = 2
    start_pi: int = 0

    def __post_init__(self) -> None:
        if self.limit < 2:
            raise ValueError(f"limit must be >= 2, got {self.limit}")
        if self.limit > MAX_LIMIT:
            raise LimitTooLargeError(
                f"limit {self.limit} exceeds supported maximum {MAX_LIMIT}"
            )
        if not (MIN_SEGMENT_SIZE <= self.segment_size <= MAX_SEGMENT_SIZE):
            raise ValueError(
                f"segment_size must be in [{MIN_SEGMENT_SIZE}, {MAX_SEGMENT_SIZE}],"
                f" got {self.segment_size}"
            )
        if self.start < 2:
            raise ValueError(f"start must be >= 2, got {self.start}")
        if self.start > self.limit:
            raise ValueError(f"start {self.start} exceeds limit {self.limit}")
        if self.start_pi < 0:
            raise ValueError("start_pi must be >= 0")
        if self.start == 2 and self.start_pi != 0:
            raise ValueError("start_pi must be 0 when starting from 2")


def base_primes(limit: int) -> np.ndarray:
    """Primes <= limit via a plain boolean sieve (int64 array)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


class StreamSummary(NamedTuple):
    last_processed: int
    pi_at_last: int


def iter_prime_blocks(cfg: SieveConfig) -> Iterator[tuple[np.ndarray, np.ndarray, int]]:
    """Yield (primes, pi_values, segment_high) per segment, in order.

    ``primes`` and ``pi_values`` are aligned int64 arrays; ``segment_high``
    is the largest integer fully sieved so far (the confirmation frontier).
    Single-threaded by construction, which trivially satisfies the ordered
    delivery contract; a parallel sieve would have to re-order before
    yielding.
    """
    limit = cfg.limit
    basis = base_primes(math.isqrt(limit))
    odd_basis = basis[basis >= 3]

    count = cfg.start_pi
    lo = cfg.start
    if lo <= 2:
        yield (
            np.array([2], dtype=np.int64),
            np.array([1], dtype=np.int64),
            min(2, limit),
        )
        count = 1
        lo = 3
    if lo % 2 == 0:
        lo += 1

    span = 2 * cfg.segment_size
    while lo <= limit:
        hi = min(lo + span - 2, limit if limit % 2 == 1 else limit - 1)
        odd_count = (hi - lo) // 2 + 1
        mask = np.ones(odd_count, dtype=bool)
        for p in odd_basis:
            p = int(p)
            p2 = p * p
            if p2 > hi:
                break
            first = max(p2, ((lo + p - 1) // p) * p)
            if first % 2 == 0:
                first += p
            if first <= hi:
                mask[(first - lo) // 2 :: p] = False
        idx = np.flatnonzero(mask)
        primes = lo + 2 * idx.astype(np.int64)
        pis = count + 1 + np.arange(len(primes), dtype=np.int64)
        count += len(primes)
        yield primes, pis, min(hi + 1, limit)
        lo = hi + 2


def stream_primes(
    cfg: SieveConfig, consumer: Callable[[PrimePoint], None]
) -> StreamSummary:
    """Drive ``consumer`` with every (p, pi(p)) for primes in the range."""
    last = cfg.start - 1
    count = cfg.start_pi
    for primes, pis, high in iter_prime_blocks(cfg):
        for p, r in zip(primes.tolist(), pis.tolist()):
            consumer(PrimePoint(p, r))
        if len(pis):
            count = int(pis[-1])
        last = high
    return StreamSummary(last_processed=max(last, cfg.limit), pi_at_last=count)


def pi_upper_bound(x: float) -> float:
    """Upper bound 1.25506 x / ln x on pi(x), valid for all x > 1."""
    if x <= 1:
        raise ValueError(f"pi_upper_bound requires x > 1, got {x}")
    return RS_CONSTANT * x / math.log(x)


def bound_slope(x: float) -> float:
    """Derivative 1.25506 (ln x - 1)/ln^2 x of pi_upper_bound.

    Decreasing for x > e^2, which is what the confirmation horizon needs;
    smaller x is rejected.
    """
    if x <= E_SQUARED:
        raise ValueError(f"bound_slope requires x > e^2, got {x}")
    y = math.log(x)
    return RS_CONSTANT * (y - 1.0) / (y * y)


def pi_upper_bound_tight(x: float) -> float:
    """Piecewise upper bound on pi(x): Rosser-Schoenfeld below 88789,
    Dusart's x/ln x (1 + 1/ln x + 2/ln^2 x + 7.59/ln^3 x) at and above it.
    """
    if x < DUSART_CUTOFF:
        return pi_upper_bound(x)
    y = math.log(x)
    return x / y * (1.0 + 1.0 / y + 2.0 / (y * y) + 7.59 / (y * y * y))


def bound_slope_tight(x: float) -> float:
    """Derivative of ``pi_upper_bound_tight`` on its smooth pieces.

    1/ln x + 1.59/ln^4 x - 30.36/ln^5 x on the Dusart branch; decreasing
    there for x >= 30, and the branch switch only jumps downward, so the
    piecewise slope is decreasing wherever the confirmation rule uses it.
    """
    if x < DUSART_CUTOFF:
        return bound_slope(x)
    y = math.log(x)
    y4 = y * y * y * y
    return 1.0 / y + 1.59 / y4 - 30.36 / (y4 * y)
