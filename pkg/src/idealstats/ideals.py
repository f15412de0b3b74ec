"""Ideals as factorizations over prime ideals.

An integral ideal of a supported field is represented by its factorization:
a tuple of (prime ideal, exponent) pairs ordered by the prime ideal sort
key.  enumerate_ideals walks all ideals of norm <= x depth-first; this
object stream is meant for small bounds and for cross-checking the
aggregate kernels, which traverse the same tree without building objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import MathDomainError
from .fields import FieldDescriptor
from .primeideals import PrimeIdeal, prime_ideals_up_to


@dataclass(frozen=True)
class IdealFactorization:
    """An ideal given by its prime ideal factorization; norm is the product."""

    factors: tuple[tuple[PrimeIdeal, int], ...]
    norm: int

    def __post_init__(self) -> None:
        n = 1
        for prime, e in self.factors:
            if e < 1:
                raise ValueError("exponents must be positive")
            n *= prime.norm**e
        if n != self.norm:
            raise ValueError(f"norm {self.norm} does not match factors (product {n})")

    @property
    def is_unit(self) -> bool:
        return not self.factors


UNIT_IDEAL = IdealFactorization(factors=(), norm=1)


def enumerate_ideals(desc: FieldDescriptor, x: int | float) -> Iterator[IdealFactorization]:
    """All ideals of norm <= x, depth-first, prime-major / exponent-minor.

    The unit ideal comes first.  Children extend the current factorization
    with strictly larger prime indices, so each ideal appears exactly once.
    """
    bound = int(x)
    if bound < 1:
        return
    primes = prime_ideals_up_to(desc, bound)
    n = len(primes)

    def rec(start: int, stack: list[tuple[PrimeIdeal, int]], norm: int) -> Iterator[IdealFactorization]:
        yield IdealFactorization(factors=tuple(stack), norm=norm)
        for j in range(start, n):
            prime = primes[j]
            pn = prime.norm
            if norm * pn > bound:
                break
            value = norm
            e = 0
            while value * pn <= bound:
                value *= pn
                e += 1
                stack.append((prime, e))
                yield from rec(j + 1, stack, value)
                stack.pop()

    yield from rec(0, [], 1)


def omega(f: IdealFactorization) -> int:
    """Number of distinct prime ideal divisors."""
    return len(f.factors)


def omega_up_to(f: IdealFactorization, y: float) -> int:
    """Distinct prime ideal divisors of norm <= y."""
    return sum(1 for prime, _ in f.factors if prime.norm <= y)


def mobius(f: IdealFactorization) -> int:
    """(-1)^omega on squarefree ideals, 0 otherwise."""
    for _, e in f.factors:
        if e > 1:
            return 0
    return -1 if len(f.factors) % 2 else 1


def is_h_free(f: IdealFactorization, h: int) -> bool:
    """No prime ideal exponent reaches h."""
    if h < 2:
        raise ValueError("h must be >= 2")
    return all(e < h for _, e in f.factors)


def is_h_full(f: IdealFactorization, h: int) -> bool:
    """Every prime ideal exponent is at least h (vacuously true for the unit)."""
    if h < 2:
        raise ValueError("h must be >= 2")
    return all(e >= h for _, e in f.factors)


@dataclass(frozen=True)
class HFullDecomposition:
    """The canonical split of an h-full ideal into h component ideals.

    parts[0]^h * parts[1]^(h+1) * ... * parts[h-1]^(2h-1) recovers the
    ideal; parts[1..h-1] are squarefree and pairwise coprime.
    """

    h: int
    parts: tuple[IdealFactorization, ...]

    def recompose_norm(self) -> int:
        n = 1
        for j, part in enumerate(self.parts):
            n *= part.norm ** (self.h + j)
        return n


def _ideal_from_pairs(pairs: list[tuple[PrimeIdeal, int]]) -> IdealFactorization:
    pairs = sorted(pairs, key=lambda pe: pe[0].sort_key)
    n = 1
    for prime, e in pairs:
        n *= prime.norm**e
    return IdealFactorization(factors=tuple(pairs), norm=n)


def h_full_decompose(f: IdealFactorization, h: int) -> HFullDecomposition:
    """Write an h-full ideal as a0^h a1^(h+1) ... a_{h-1}^(2h-1).

    A prime with exponent e = h*t + j (0 <= j < h) goes into part j once
    (when j > 0) and into part 0 with exponent t, or t-1 when j > 0; zero
    exponents are dropped.  This makes parts 1..h-1 squarefree and pairwise
    coprime among themselves (part 0 may share primes with them).
    """
    if h < 2:
        raise ValueError("h must be >= 2")
    part_pairs: list[list[tuple[PrimeIdeal, int]]] = [[] for _ in range(h)]
    for prime, e in f.factors:
        if e < h:
            raise MathDomainError(
                f"ideal is not {h}-full: prime of norm {prime.norm} has exponent {e}"
            )
        t, j = divmod(e, h)
        if j == 0:
            part_pairs[0].append((prime, t))
        else:
            part_pairs[j].append((prime, 1))
            if t - 1 > 0:
                part_pairs[0].append((prime, t - 1))
    parts = tuple(_ideal_from_pairs(pairs) for pairs in part_pairs)
    return HFullDecomposition(h=h, parts=parts)
