"""Pure-Python depth-first enumeration kernels.

Every kernel walks the multiplicative tree of ideals over a sorted array of
prime ideal norms: a node picks a prime index j and an exponent e, children
may only use indices > j, and the running norm stays <= x.  The subset
argument fixes the exponent range per prime:

    subset 0 (all)    e in [1, inf)
    subset 1 (h-free) e in [1, h-1]
    subset 2 (h-full) e in [h, inf)

The unit ideal (empty product) is always a member.  The compiled backend in
_kernels_cy mirrors these routines exactly; keep the traversal order in sync
or the backend-equality tests will fail.
"""

from __future__ import annotations

import sys
from array import array
from math import log, sqrt

import numpy as np

BACKEND = "python"

_NO_MAX = 1 << 30


def _exponent_range(subset: int, h: int) -> tuple[int, int]:
    if subset == 0:
        return 1, _NO_MAX
    if subset == 1:
        if h < 2:
            raise ValueError("h-free requires h >= 2")
        return 1, h - 1
    if subset == 2:
        if h < 2:
            raise ValueError("h-full requires h >= 2")
        return h, _NO_MAX
    raise ValueError(f"unknown subset code {subset}")


def _prep(norms: np.ndarray, x: int) -> list[int]:
    if x < 1:
        raise ValueError("x must be >= 1")
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))
    return [int(v) for v in norms]


def count(norms: np.ndarray, x: int, subset: int, h: int) -> int:
    """Number of subset members with norm <= x."""
    nr = _prep(norms, x)
    n = len(nr)
    emin, emax = _exponent_range(subset, h)

    def rec(start: int, rem: int) -> int:
        total = 1
        for j in range(start, n):
            N = nr[j]
            q = rem
            k = emin
            while k and N <= q:
                q //= N
                k -= 1
            if k:
                break
            e = emin
            while True:
                total += rec(j + 1, q)
                if e == emax or N > q:
                    break
                q //= N
                e += 1
        return total

    return rec(0, int(x))


def ek_z(norms: np.ndarray, x: int, subset: int, h: int) -> np.ndarray:
    """Normalized prime-factor counts (omega - loglog N)/sqrt(loglog N).

    One value per subset member of norm >= 3, in traversal order.
    """
    nr = _prep(norms, x)
    n = len(nr)
    emin, emax = _exponent_range(subset, h)
    out = array("d")
    append = out.append

    def rec(start: int, rem: int, nv: int, om: int) -> None:
        if nv >= 3:
            ll = log(log(nv))
            append((om - ll) / sqrt(ll))
        for j in range(start, n):
            N = nr[j]
            q = rem
            m = 1
            k = emin
            while k and N <= q:
                q //= N
                m *= N
                k -= 1
            if k:
                break
            e = emin
            while True:
                rec(j + 1, q, nv * m, om + 1)
                if e == emax or N > q:
                    break
                q //= N
                m *= N
                e += 1

    rec(0, int(x), 1, 0)
    return np.frombuffer(out, dtype=np.float64).copy() if out else np.empty(0)


def mask_hist(
    norms: np.ndarray, x: int, subset: int, h: int, tracked: np.ndarray
) -> tuple[int, np.ndarray]:
    """Histogram of members over divisibility patterns of tracked primes.

    tracked holds at most 8 distinct indices into norms; bit i of a pattern
    is set when the member is divisible by the prime at tracked[i].  Returns
    (member count, 256-bin histogram).
    """
    nr = _prep(norms, x)
    n = len(nr)
    emin, emax = _exponent_range(subset, h)
    if len(tracked) > 8:
        raise ValueError("at most 8 tracked primes")
    tbit = [0] * n
    for i, j in enumerate(tracked):
        j = int(j)
        if not 0 <= j < n:
            raise ValueError(f"tracked index {j} out of range")
        if tbit[j]:
            raise ValueError("tracked indices must be distinct")
        tbit[j] = 1 << i
    hist = [0] * 256

    def rec(start: int, rem: int, mask: int) -> int:
        hist[mask] += 1
        total = 1
        for j in range(start, n):
            N = nr[j]
            q = rem
            k = emin
            while k and N <= q:
                q //= N
                k -= 1
            if k:
                break
            child = mask | tbit[j]
            e = emin
            while True:
                total += rec(j + 1, q, child)
                if e == emax or N > q:
                    break
                q //= N
                e += 1
        return total

    members = rec(0, int(x), 0)
    return members, np.array(hist, dtype=np.int64)


def large_factor_stats(
    norms: np.ndarray, x: int, subset: int, h: int, lo: int, athresh: int
) -> tuple[int, np.ndarray, int]:
    """Per-prime divisor counts above a norm threshold.

    Returns (member count, counts c where c[j] = number of members divisible
    by the prime at index j, filled only for norms > lo, and the maximum over
    members of the number of distinct prime factors of norm > athresh).
    """
    nr = _prep(norms, x)
    n = len(nr)
    emin, emax = _exponent_range(subset, h)
    cnt = [0] * n
    stack: list[int] = []
    max_above = 0

    def rec(start: int, rem: int) -> int:
        nonlocal max_above
        above = 0
        for idx in stack:
            if nr[idx] > lo:
                cnt[idx] += 1
            if nr[idx] > athresh:
                above += 1
        if above > max_above:
            max_above = above
        total = 1
        for j in range(start, n):
            N = nr[j]
            q = rem
            k = emin
            while k and N <= q:
                q //= N
                k -= 1
            if k:
                break
            stack.append(j)
            e = emin
            while True:
                total += rec(j + 1, q)
                if e == emax or N > q:
                    break
                q //= N
                e += 1
            stack.pop()
        return total

    members = rec(0, int(x))
    return members, np.array(cnt, dtype=np.int64), max_above


def centered_omega_y_moments(
    norms: np.ndarray,
    x: int,
    subset: int,
    h: int,
    y: float,
    mu: float,
    sigma: float,
    rmax: int,
) -> tuple[int, np.ndarray]:
    """Empirical moments of (omega_y - mu)/sigma over subset members.

    omega_y counts distinct prime ideal factors of norm <= y.  Returns the
    member count and the sums of r-th powers for r = 1..rmax; divide by the
    count for the moments.
    """
    nr = _prep(norms, x)
    n = len(nr)
    emin, emax = _exponent_range(subset, h)
    if not 1 <= rmax <= 8:
        raise ValueError("rmax must be in 1..8")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    sums = [0.0] * rmax

    def rec(start: int, rem: int, oy: int) -> int:
        t = (oy - mu) / sigma
        p = 1.0
        for r in range(rmax):
            p *= t
            sums[r] += p
        total = 1
        for j in range(start, n):
            N = nr[j]
            q = rem
            k = emin
            while k and N <= q:
                q //= N
                k -= 1
            if k:
                break
            oy_child = oy + 1 if N <= y else oy
            e = emin
            while True:
                total += rec(j + 1, q, oy_child)
                if e == emax or N > q:
                    break
                q //= N
                e += 1
        return total

    members = rec(0, int(x), 0)
    return members, np.array(sums, dtype=np.float64)
