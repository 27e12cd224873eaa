"""Independent reference implementations for cross-checking.

Everything here is deliberately naive: a bytearray sieve, a batch convex
hull using Fraction slopes (no cross products), and mpmath-based analytic
values.  The point is that none of the production shortcuts (segmenting,
int64 kernels, closed-form derivatives, fixed-panel quadrature) are shared
with these implementations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by a plain sieve of Eratosthenes."""
    if limit < 2:
        return []
    mask = bytearray([1]) * (limit + 1)
    mask[0] = mask[1] = 0
    p = 2
    while p * p <= limit:
        if mask[p]:
            mask[p * p :: p] = bytearray(len(mask[p * p :: p]))
        p += 1
    return [i for i in range(2, limit + 1) for _ in range(mask[i])]


def prime_points(limit: int) -> list[tuple[int, int]]:
    """(p, pi(p)) for all primes p <= limit."""
    return [(p, i + 1) for i, p in enumerate(sieve_primes(limit))]


class OracleVertex:
    def __init__(self, p, y, ties):
        self.p = p
        self.y = y  # Fraction: pi(p) for the main hull, p/pi(p) for M
        self.ties = ties

    def __repr__(self):
        return f"OracleVertex({self.p}, {self.y}, ties={self.ties})"


def batch_upper_hull(points: Sequence[tuple[int, Fraction]]) -> list[OracleVertex]:
    """Monotone-chain upper hull with Fraction slopes and tie recording.

    A new point pops the stack while slope(prev, top) <= slope(top, new);
    an exactly-equal comparison transfers the popped vertex and its ties
    into the new point's tie list (the popped vertex lies on the new edge),
    while a strict pop on the first iteration clears any inherited ties
    (the edge that carried them is gone).
    """
    stack: list[OracleVertex] = []
    for p, y in points:
        ties: list[int] = []
        first_pop = True
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            s_ab = Fraction(b.y - a.y, b.p - a.p)
            s_bn = Fraction(y - b.y, p - b.p)
            if s_ab > s_bn:
                break
            popped = stack.pop()
            if s_ab == s_bn:
                ties = popped.ties + [popped.p] + ties
            elif first_pop:
                ties = []
            first_pop = False
        stack.append(OracleVertex(p, y, ties))
    return stack


def hull_of_primes(limit: int) -> list[OracleVertex]:
    """Upper hull of (p, pi(p)) over all primes <= limit."""
    return batch_upper_hull([(p, Fraction(k)) for p, k in prime_points(limit)])


def m_hull_of_primes(limit: int) -> list[OracleVertex]:
    """Upper hull of (p, p/pi(p)) over all primes <= limit."""
    return batch_upper_hull([(p, Fraction(p, k)) for p, k in prime_points(limit)])


def chord_dominates(vertices: Sequence[tuple[int, Fraction]], points: Sequence[tuple[int, Fraction]]) -> bool:
    """Every point lies on or below the piecewise-linear top of `vertices`."""
    vi = 0
    for p, y in points:
        while vi + 1 < len(vertices) and vertices[vi + 1][0] < p:
            vi += 1
        (ap, ay) = vertices[vi]
        if p == ap:
            if y != ay:
                return False
            continue
        if vi + 1 >= len(vertices):
            continue
        (bp, by) = vertices[vi + 1]
        # y <= ay + (by-ay)/(bp-ap) * (p-ap), cleared of denominators
        if (y - ay) * (bp - ap) > (by - ay) * (p - ap):
            return False
    return True


def mp_li(x, dps: int = 30):
    """Offset logarithmic integral via mpmath: integral from 2 to x."""
    import mpmath as mp

    with mp.workdps(dps):
        return mp.li(x, offset=True)


def mp_tangent_gap(x, h, dps: int = 40):
    """F(h) = L(x+h) + eps(x+h) - (phi(x) + phi'(x) h) in mpmath arithmetic."""
    import mpmath as mp

    with mp.workdps(dps):
        x = mp.mpf(x)
        h = mp.mpf(h)
        y = mp.log(x)
        eps = mp.sqrt(x) * y
        eps1 = (y + 2) / (2 * mp.sqrt(x))
        phi_p = 1 / y - eps1
        z = x + h
        return mp.li(z, offset=True) - mp.li(x, offset=True) + mp.sqrt(z) * mp.log(z) + eps - phi_p * h


def _mp_bisect(f, lo, hi, iters: int = 140):
    import mpmath as mp

    flo = f(lo)
    assert (flo > 0) != (f(hi) > 0)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def mp_h_crossings(x, dps: int = 40):
    """Exact tangent crossings (h-, h+) solved with mpmath bisection."""
    import mpmath as mp

    with mp.workdps(dps):
        f = lambda h: mp_tangent_gap(x, h, dps)
        hi = mp.mpf(x)
        while f(hi) > 0:
            hi *= 2
        h_plus = _mp_bisect(f, mp.mpf(0), hi)
        lo = mp.mpf(2) - x + mp.mpf(x) * mp.mpf(10) ** -9
        h_minus = _mp_bisect(f, lo, mp.mpf(0))
        return h_minus, h_plus
