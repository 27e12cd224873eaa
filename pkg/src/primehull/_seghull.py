"""Upper-hull kernel for one sieve segment.

Computes the upper convex hull of the points (P[i], R[i]) within a single
segment, retaining points popped for exact slope equality as tie
annotations.  Extreme points of a union are extreme points of the parts,
so feeding only each segment's hull vertices (plus their tie lists) into
the global stack reproduces the full streaming hull exactly; the module
tests pin that equivalence against per-point pushes.

All comparisons are exact int64 cross products.  Safe because segment
spans are capped at 2^26, so |delta pi| * |delta p| < 2^25 * 2^26 = 2^51.

The kernel is compiled with numba when available and falls back to the
same function in pure Python otherwise.
"""

from __future__ import annotations

import numpy as np


def _segment_hull_impl(P, R):  # pragma: no cover - exercised via wrappers
    n = P.shape[0]
    stack = np.empty(n, np.int64)  # indices into P of current hull vertices
    tie_lo = np.empty(n, np.int64)  # per-slot range into tie_buf
    tie_hi = np.empty(n, np.int64)
    tie_buf = np.empty(n, np.int64)  # indices of collinear (tied) points
    top = -1
    tie_top = 0
    for i in range(n):
        merged_lo = -1
        merged_hi = -1
        while top >= 1:
            u = stack[top - 1]
            v = stack[top]
            lhs = (R[v] - R[u]) * (P[i] - P[v])
            rhs = (R[i] - R[v]) * (P[v] - P[u])
            if lhs > rhs:
                break
            if lhs == rhs:
                # v sits exactly on the chord u -> i: keep it, and its own
                # tie range, as ties of i.  An equal pop is always the last
                # pop of a push (stack slopes are strictly decreasing), so
                # v's tie range ends exactly at tie_top and stays contiguous
                # after appending v itself.
                tie_buf[tie_top] = v
                tie_top += 1
                merged_lo = tie_lo[top]
                merged_hi = tie_top
                top -= 1
            else:
                # v strictly below the chord: discard it and its ties.
                tie_top = tie_lo[top]
                top -= 1
        top += 1
        stack[top] = i
        if merged_lo >= 0:
            tie_lo[top] = merged_lo
            tie_hi[top] = merged_hi
        else:
            tie_lo[top] = tie_top
            tie_hi[top] = tie_top
    m = top + 1
    return stack[:m].copy(), tie_lo[:m].copy(), tie_hi[:m].copy(), tie_buf[:tie_top].copy()


segment_hull_py = _segment_hull_impl

try:  # pragma: no cover - import-time branch
    from numba import njit

    segment_hull = njit(cache=True)(_segment_hull_impl)
except ImportError:  # pragma: no cover
    segment_hull = _segment_hull_impl
