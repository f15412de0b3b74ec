"""Rational prime sieve and prime ideal tables.

The sieve is a segmented Eratosthenes over numpy boolean arrays, so memory
stays proportional to the segment size.  Prime ideals of a quadratic field
are derived from the rational primes through the discriminant character:
split primes contribute two ideals of norm p, ramified primes one of norm p,
inert primes one of norm p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InvalidFieldError
from .fields import FieldDescriptor, SplitKind, is_prime, kronecker, split_prime

_SEGMENT = 1 << 22

# Largest sieve kept in memory; prefixes of it serve smaller requests.
_prime_cache: dict[str, np.ndarray] = {}
_prime_cache_limit = 0


def _simple_sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def primes_up_to(limit: int) -> np.ndarray:
    """Sorted array of rational primes <= limit."""
    global _prime_cache_limit
    limit = int(limit)
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit <= _prime_cache_limit:
        primes = _prime_cache["primes"]
        return primes[: np.searchsorted(primes, limit, side="right")]
    if limit <= _SEGMENT:
        result = _simple_sieve(limit)
    else:
        root = math.isqrt(limit)
        base = _simple_sieve(root)
        chunks = [base]
        for lo in range(root + 1, limit + 1, _SEGMENT):
            hi = min(lo + _SEGMENT - 1, limit)
            seg = np.ones(hi - lo + 1, dtype=bool)
            for p in base:
                p = int(p)
                start = ((lo + p - 1) // p) * p
                if start < p * p:
                    start = p * p
                if start <= hi:
                    seg[start - lo :: p] = False
            chunks.append(np.flatnonzero(seg).astype(np.int64) + lo)
        result = np.concatenate(chunks)
    _prime_cache["primes"] = result
    _prime_cache_limit = limit
    return result


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal identified by its rational prime and conjugate slot.

    conjugate_index is 0, or 1 for the second ideal above a split prime.
    f is the residue degree (norm = p^f), so f=2 exactly for inert primes.
    """

    p: int
    conjugate_index: int
    norm: int
    f: int
    ramified: bool

    def __post_init__(self) -> None:
        if self.norm != self.p**self.f:
            raise ValueError(f"norm {self.norm} is not {self.p}^{self.f}")

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm, self.p, self.conjugate_index)


class PrimeIdealTable(NamedTuple):
    """Columnar prime ideal data sorted by (norm, p, conjugate_index)."""

    label: str
    limit: int
    p: np.ndarray
    conjugate_index: np.ndarray
    norm: np.ndarray
    f: np.ndarray
    ramified: np.ndarray

    def __len__(self) -> int:
        return len(self.norm)

    def truncate(self, limit: int) -> "PrimeIdealTable":
        if limit > self.limit:
            raise ValueError(f"table only covers norms up to {self.limit}")
        k = int(np.searchsorted(self.norm, limit, side="right"))
        return PrimeIdealTable(
            self.label,
            int(limit),
            self.p[:k],
            self.conjugate_index[:k],
            self.norm[:k],
            self.f[:k],
            self.ramified[:k],
        )

    def ideal(self, i: int) -> PrimeIdeal:
        return PrimeIdeal(
            p=int(self.p[i]),
            conjugate_index=int(self.conjugate_index[i]),
            norm=int(self.norm[i]),
            f=int(self.f[i]),
            ramified=bool(self.ramified[i]),
        )


def character_table(D: int) -> np.ndarray:
    """Values of the Kronecker symbol (D|n) for n = 0..|D|-1.

    (D|.) is periodic with period |D| because D is a fundamental
    discriminant, which lets the splitting of a whole prime array be read
    off with one modulo operation.
    """
    m = abs(D)
    return np.array([kronecker(D, r) for r in range(m)], dtype=np.int8)


def _split_masks(desc: FieldDescriptor, primes: np.ndarray):
    chi = character_table(desc.discriminant)
    vals = chi[primes % abs(desc.discriminant)]
    return vals == 1, vals == -1, vals == 0


@lru_cache(maxsize=8)
def _prime_ideal_norms_cached(desc: FieldDescriptor, limit: int) -> np.ndarray:
    primes = primes_up_to(limit)
    if desc.degree == 1:
        return primes
    split, inert, ram = _split_masks(desc, primes)
    root = math.isqrt(limit)
    small = primes[: np.searchsorted(primes, root, side="right")]
    inert_small = inert[: len(small)]
    parts = [
        np.repeat(primes[split], 2),
        primes[ram],
        small[inert_small] ** 2,
    ]
    return np.sort(np.concatenate(parts))


def prime_ideal_norms(desc: FieldDescriptor, limit: int) -> np.ndarray:
    """Sorted norms (with multiplicity) of prime ideals of norm <= limit.

    Treat the result as read-only; recent bounds are served from a cache.
    """
    return _prime_ideal_norms_cached(desc, int(limit))


def prime_ideal_table(desc: FieldDescriptor, limit: int) -> PrimeIdealTable:
    """Full prime ideal listing up to a norm bound, columnar form."""
    limit = int(limit)
    primes = primes_up_to(limit)
    if desc.degree == 1:
        n = len(primes)
        return PrimeIdealTable(
            desc.label,
            limit,
            primes,
            np.zeros(n, dtype=np.int8),
            primes.copy(),
            np.ones(n, dtype=np.int8),
            np.zeros(n, dtype=bool),
        )
    split, inert, ram = _split_masks(desc, primes)
    root = math.isqrt(limit)
    small = primes[: np.searchsorted(primes, root, side="right")]
    inert_p = small[inert[: len(small)]]
    split_p = primes[split]
    ram_p = primes[ram]
    p_col = np.concatenate([np.repeat(split_p, 2), ram_p, inert_p])
    conj = np.concatenate(
        [
            np.tile(np.array([0, 1], dtype=np.int8), len(split_p)),
            np.zeros(len(ram_p) + len(inert_p), dtype=np.int8),
        ]
    )
    norm = np.concatenate([np.repeat(split_p, 2), ram_p, inert_p**2])
    f_col = np.concatenate(
        [
            np.ones(2 * len(split_p) + len(ram_p), dtype=np.int8),
            np.full(len(inert_p), 2, dtype=np.int8),
        ]
    )
    ram_col = np.concatenate(
        [
            np.zeros(2 * len(split_p), dtype=bool),
            np.ones(len(ram_p), dtype=bool),
            np.zeros(len(inert_p), dtype=bool),
        ]
    )
    order = np.lexsort((conj, p_col, norm))
    return PrimeIdealTable(
        desc.label,
        limit,
        p_col[order],
        conj[order],
        norm[order],
        f_col[order],
        ram_col[order],
    )


def prime_ideals_up_to(desc: FieldDescriptor, x: int | float) -> list[PrimeIdeal]:
    """Prime ideals of norm <= x as objects, sorted by (norm, p, conjugate)."""
    limit = int(x)
    if limit < 2:
        return []
    table = prime_ideal_table(desc, limit)
    return [table.ideal(i) for i in range(len(table))]


def prime_ideal_index(table: PrimeIdealTable, prime: PrimeIdeal) -> int:
    """Row of a prime ideal inside a table; raises when absent."""
    lo = int(np.searchsorted(table.norm, prime.norm, side="left"))
    hi = int(np.searchsorted(table.norm, prime.norm, side="right"))
    for i in range(lo, hi):
        if int(table.p[i]) == prime.p and int(table.conjugate_index[i]) == prime.conjugate_index:
            return i
    raise ValueError(f"prime ideal {prime} not in table for {table.label}")


class PrimeCount(NamedTuple):
    count: int
    model: float


def prime_ideal_count(desc: FieldDescriptor, x: int | float) -> PrimeCount:
    """Number of prime ideals of norm <= x, with the x/log x reference model."""
    if x < 2:
        return PrimeCount(0, 0.0)
    count = len(prime_ideal_norms(desc, int(x)))
    return PrimeCount(count, float(x) / math.log(x))


def smallest_prime_ideals(desc: FieldDescriptor, k: int) -> list[PrimeIdeal]:
    """The k prime ideals of smallest norm (ties broken by p, conjugate)."""
    limit = 64
    while True:
        ideals = prime_ideals_up_to(desc, limit)
        if len(ideals) >= k:
            return ideals[:k]
        if limit > 10**9:
            raise InvalidFieldError(f"cannot find {k} prime ideals")
        limit *= 4


def prime_ideal_for(desc: FieldDescriptor, p: int, conjugate_index: int = 0) -> PrimeIdeal:
    """The prime ideal above the rational prime p with the given conjugate index."""
    if not is_prime(p):
        raise InvalidFieldError(f"{p} is not prime")
    if desc.degree == 1:
        if conjugate_index != 0:
            raise InvalidFieldError("the rational field has one prime per p")
        return PrimeIdeal(p=p, conjugate_index=0, norm=p, f=1, ramified=False)
    st = split_prime(desc, p)
    if conjugate_index >= len(st.norms):
        raise InvalidFieldError(
            f"prime {p} has {len(st.norms)} ideal(s) above it, index {conjugate_index} invalid"
        )
    norm = st.norms[conjugate_index]
    return PrimeIdeal(
        p=p,
        conjugate_index=conjugate_index,
        norm=norm,
        f=2 if st.kind is SplitKind.INERT else 1,
        ramified=st.kind is SplitKind.RAMIFIED,
    )
