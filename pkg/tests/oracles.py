"""Independent reference computations used by the test suite.

Everything here deliberately takes a different route than the package
(integer sieves, divisor loops, modular exponentiation) so that agreement
between the two is evidence, not tautology.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion, for odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    return r - p if r == p - 1 else r


def sieve_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(flags)]


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest prime factor for every n <= limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


def factor_exponents(n: int, spf: np.ndarray) -> dict[int, int]:
    out: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def hfree_integers(x: int, h: int) -> list[int]:
    """All n <= x whose prime exponents stay below h (1 included)."""
    spf = spf_sieve(x)
    out = []
    for n in range(1, x + 1):
        if all(e < h for e in factor_exponents(n, spf).values()):
            out.append(n)
    return out


def hfull_integers(x: int, h: int) -> list[int]:
    """All n <= x whose prime exponents are all >= h (1 included)."""
    spf = spf_sieve(x)
    out = []
    for n in range(1, x + 1):
        if all(e >= h for e in factor_exponents(n, spf).values()):
            out.append(n)
    return out


def chi_divisor_count(chi, n: int) -> int:
    """Number of ideals of norm n in a quadratic field, as the divisor sum
    of the discriminant character (Dirichlet convolution 1 * chi)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += int(chi(d))
    return total


def dirichlet_l(chi_table: np.ndarray, s: float, terms: int = 2_000_000) -> float:
    """Partial Dirichlet L-sum of a periodic character; the alternating-style
    tail is below period * terms^-s, tiny for the s used in tests."""
    period = len(chi_table)
    n = np.arange(1, terms + 1, dtype=np.int64)
    vals = chi_table[n % period].astype(np.float64) * np.power(
        n.astype(np.float64), -s
    )
    chunk = 1 << 16
    return math.fsum(
        float(np.sum(vals[i : i + chunk])) for i in range(0, len(vals), chunk)
    )


def int_root(n: int, k: int) -> int:
    """Floor k-th root by float guess plus exact adjustment."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def rational_tuple_count(h: int, x: int) -> int:
    """Number of integer tuples (a_0,...,a_{h-1}) with prod a_i^(h+i) <= x,
    counted by nested loops over the outer components."""

    def rec(j: int, rem: int) -> int:
        if j == 0:
            return int_root(rem, h)
        total = 0
        b = 1
        while b ** (h + j) <= rem:
            total += rec(j - 1, rem // b ** (h + j))
            b += 1
        return total

    return rec(h - 1, x)


def hfree_density(norm: int, h: int) -> Fraction:
    return Fraction(norm ** (h - 1) - 1, norm**h - 1)
