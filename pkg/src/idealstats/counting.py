"""Ideal counting: totals, h-free, h-full, component tuples, divisor densities.

Observed counts come from the depth-first kernels.  Every count is paired
with its asymptotic prediction (main term plus the error-term case, which
depends on how 1/h or h/(h+1) compares with the Landau exponent
1 - 2/(n_K + 1)).

For quadratic fields the number of ideals of a given norm also has a
divisor-sum expression through the discriminant character; that route
(ideal_counts_by_norm) is deliberately independent of the enumeration
kernels and backs the tuple counts and the norm-indexed sums.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .constants import (
    dedekind_zeta,
    hfree_coprime_factor,
    hfree_prime_divisor_density,
    hfull_coprime_factor,
    hfull_density_constant,
    hfull_prime_divisor_density,
)
from .errors import MathDomainError
from .fields import FieldDescriptor
from .primeideals import (
    PrimeIdeal,
    PrimeIdealTable,
    character_table,
    prime_ideal_index,
    prime_ideal_table,
)

LANDAU = "landau"
POWER = "power"
POWER_LOG = "power_log"


def iroot(n: int, k: int) -> int:
    """Largest r with r^k <= n."""
    if n < 0 or k < 1:
        raise MathDomainError("iroot needs n >= 0, k >= 1")
    if n == 0:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@lru_cache(maxsize=16)
def _counts_cached(desc: FieldDescriptor, limit: int) -> np.ndarray:
    chi = character_table(desc.discriminant)
    period = abs(desc.discriminant)
    counts = np.zeros(limit + 1, dtype=np.int32)
    for d in range(1, limit + 1):
        c = int(chi[d % period])
        if c:
            counts[d::d] += c
    counts[0] = 0
    return counts


def ideal_counts_by_norm(desc: FieldDescriptor, limit: int) -> np.ndarray:
    """counts[n] = number of ideals of norm exactly n, for n <= limit.

    Quadratic fields only: the count is the divisor sum of the discriminant
    character.  The rational field needs no table (one ideal per norm).
    """
    if desc.degree == 1:
        counts = np.ones(limit + 1, dtype=np.int32)
        counts[0] = 0
        return counts
    return _counts_cached(desc, int(limit))


@lru_cache(maxsize=16)
def _count_prefix(desc: FieldDescriptor, limit: int) -> np.ndarray:
    return np.cumsum(ideal_counts_by_norm(desc, limit), dtype=np.int64)


# ------------------------------------------------------------------ kernels IO


@lru_cache(maxsize=12)
def _table_for(desc: FieldDescriptor, limit: int) -> PrimeIdealTable:
    # Disk caching is opt-in: only when a cache dir is named explicitly.
    if os.environ.get("IDEALSTATS_CACHE_DIR"):
        from .catalog import cache_get_or_build

        return cache_get_or_build(desc, limit)
    return prime_ideal_table(desc, limit)


def norm_bound(subset: str, h: int, x: int) -> int:
    """Largest prime ideal norm that can appear in a subset member of norm <= x."""
    if subset == "hfull":
        return iroot(x, h)
    return x


def subset_table(desc: FieldDescriptor, subset: str, h: int, x: int) -> PrimeIdealTable:
    return _table_for(desc, norm_bound(subset, h, int(x)))


def subset_count(desc: FieldDescriptor, subset: str, h: int, x: int) -> int:
    """Number of subset members of norm <= x (unit ideal included)."""
    x = int(x)
    if x < 1:
        return 0
    table = subset_table(desc, subset, h, x)
    return kernels.count(table.norm, x, kernels.subset_code(subset), h)


def divisible_counts(
    desc: FieldDescriptor, subset: str, h: int, x: int, primes: list[PrimeIdeal]
) -> tuple[int, list[int]]:
    """(total members, members divisible by each given prime ideal)."""
    x = int(x)
    table = subset_table(desc, subset, h, x)
    idx = np.array([prime_ideal_index(table, p) for p in primes], dtype=np.int64)
    total, hist = kernels.mask_hist(table.norm, x, kernels.subset_code(subset), h, idx)
    out = []
    for i in range(len(primes)):
        bit = 1 << i
        out.append(int(hist[np.flatnonzero(np.arange(256) & bit)].sum()))
    return total, out


# ------------------------------------------------------------------ predictions


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Main term and error-term case for one count at one x."""

    main_term: float
    error_case: str
    error_exponent: float
    log_factor: bool


@dataclass(frozen=True)
class CountReport:
    label: str
    what: str
    h: int | None
    x: int
    observed: int
    prediction: AsymptoticPrediction
    relative_error: float


def _landau_exponent(desc: FieldDescriptor) -> float:
    return 1.0 - 2.0 / (desc.degree + 1)


def hfree_error_shape(desc: FieldDescriptor, h: int) -> tuple[float, bool]:
    """Error exponent (and log flag) for the h-free count."""
    upsilon = _landau_exponent(desc)
    if 1.0 / h < upsilon:
        return upsilon, False
    if 1.0 / h == upsilon:
        return upsilon, True
    return 1.0 / h, False


def hfull_error_shape(desc: FieldDescriptor, h: int) -> tuple[float, bool]:
    """Error exponent (and log flag) for the h-full count."""
    upsilon = _landau_exponent(desc)
    hh = h / (h + 1.0)
    if hh < upsilon:
        return upsilon / h, False
    if hh == upsilon:
        return 1.0 / (h + 1.0), True
    return 1.0 / (h + 1.0), False


def tuple_error_shape(desc: FieldDescriptor, h: int) -> tuple[float, bool]:
    """Error exponent for the unconstrained component-tuple count; same
    three-way comparison as the h-full count."""
    return hfull_error_shape(desc, h)


def _report(
    desc: FieldDescriptor,
    what: str,
    h: int | None,
    x: int,
    observed: int,
    main: float,
    shape: tuple[float, bool] | None,
) -> CountReport:
    if shape is None:
        case, exponent, logf = LANDAU, _landau_exponent(desc), False
    else:
        exponent, logf = shape
        case = POWER_LOG if logf else POWER
    pred = AsymptoticPrediction(
        main_term=main, error_case=case, error_exponent=exponent, log_factor=logf
    )
    rel = abs(observed - main) / main if main else math.inf
    return CountReport(
        label=desc.label,
        what=what,
        h=h,
        x=x,
        observed=observed,
        prediction=pred,
        relative_error=rel,
    )


def _require_h(h: int) -> None:
    if h < 2:
        raise MathDomainError("h must be >= 2")


def _require_x(x: int) -> int:
    x = int(x)
    if x < 1:
        raise MathDomainError("x must be >= 1")
    return x


# ------------------------------------------------------------------ the counts


def count_ideals(desc: FieldDescriptor, x: int) -> CountReport:
    """All ideals of norm <= x against the Landau main term kappa*x."""
    x = _require_x(x)
    observed = subset_count(desc, "all", 0, x)
    return _report(desc, "ideals", None, x, observed, desc.kappa * x, None)


def count_hfree(desc: FieldDescriptor, h: int, x: int) -> CountReport:
    """Ideals with every exponent < h, against (kappa/zeta_K(h)) x."""
    _require_h(h)
    x = _require_x(x)
    observed = subset_count(desc, "hfree", h, x)
    main = desc.kappa / dedekind_zeta(desc, float(h), tol=1e-9).value * x
    return _report(desc, "hfree", h, x, observed, main, hfree_error_shape(desc, h))


def count_hfree_coprime(
    desc: FieldDescriptor, h: int, x: int, ell: PrimeIdeal
) -> CountReport:
    """h-free ideals coprime to one fixed prime ideal."""
    _require_h(h)
    x = _require_x(x)
    total, (div,) = divisible_counts(desc, "hfree", h, x, [ell])
    observed = total - div
    factor = float(hfree_coprime_factor(ell.norm, h))
    main = factor * desc.kappa / dedekind_zeta(desc, float(h), tol=1e-9).value * x
    return _report(desc, "hfree_coprime", h, x, observed, main, hfree_error_shape(desc, h))


def count_hfull(
    desc: FieldDescriptor, h: int, x: int, verify: bool | None = None
) -> CountReport:
    """Ideals with every exponent >= h, against kappa * gamma * x^(1/h).

    The observed count always comes from the sparse walk (primes of norm <=
    x^(1/h), exponents from h up).  With verify=True, and by default for
    x <= 10^5, the count is recomputed by filtering the full enumeration
    through the exponent test and the two must agree exactly.
    """
    _require_h(h)
    x = _require_x(x)
    observed = subset_count(desc, "hfull", h, x)
    if verify is None:
        verify = x <= 100_000
    if verify:
        from .ideals import enumerate_ideals, is_h_full

        filtered = sum(1 for f in enumerate_ideals(desc, x) if is_h_full(f, h))
        if filtered != observed:
            raise ArithmeticError(
                f"h-full count mismatch: sparse walk {observed}, filter {filtered}"
            )
    gamma = hfull_density_constant(desc, h, tol=1e-6).value
    main = desc.kappa * gamma * x ** (1.0 / h)
    return _report(desc, "hfull", h, x, observed, main, hfull_error_shape(desc, h))


def count_hfull_coprime(
    desc: FieldDescriptor, h: int, x: int, ell: PrimeIdeal
) -> CountReport:
    """h-full ideals coprime to one fixed prime ideal."""
    _require_h(h)
    x = _require_x(x)
    total, (div,) = divisible_counts(desc, "hfull", h, x, [ell])
    observed = total - div
    gamma = hfull_density_constant(desc, h, tol=1e-6).value
    main = hfull_coprime_factor(ell.norm, h) * desc.kappa * gamma * x ** (1.0 / h)
    return _report(
        desc, "hfull_coprime", h, x, observed, main, hfull_error_shape(desc, h)
    )


def count_tuples(desc: FieldDescriptor, h: int, x: int) -> CountReport:
    """Tuples (a_0,...,a_{h-1}) of ideals with N(a_0^h a_1^(h+1) ... ) <= x.

    No coprimality or squarefreeness restriction; the main term is
    kappa * prod_{i=1}^{h-1} zeta_K(1 + i/h) * x^(1/h).  Computed by
    recursion over the outer components with the norm-count prefix table.
    """
    _require_h(h)
    x = _require_x(x)
    limit = max(iroot(x, h), 1)
    prefix = _count_prefix(desc, limit)
    counts = ideal_counts_by_norm(desc, limit)

    def rec(j: int, rem: int) -> int:
        if j == 0:
            return int(prefix[min(iroot(rem, h), limit)])
        total = 0
        for m in range(1, iroot(rem, h + j) + 1):
            c = int(counts[m])
            if c:
                total += c * rec(j - 1, rem // m ** (h + j))
        return total

    observed = rec(h - 1, x)
    const = math.prod(
        dedekind_zeta(desc, 1.0 + i / h, tol=1e-5).value for i in range(1, h)
    )
    main = desc.kappa * const * x ** (1.0 / h)
    return _report(desc, "tuples", h, x, observed, main, tuple_error_shape(desc, h))


# ------------------------------------------------------------------ densities


@dataclass(frozen=True)
class DensityEstimate:
    """Observed vs limiting divisibility density for one prime ideal."""

    label: str
    subset: str
    h: int | None
    x: int
    prime: PrimeIdeal
    density: float | None
    observed: float
    error: float | None


def divisor_density(
    desc: FieldDescriptor, subset: str, h: int, x: int, prime: PrimeIdeal
) -> DensityEstimate:
    """Fraction of subset members divisible by the given prime ideal.

    For subset 'all' only the observed fraction is reported; for h-free and
    h-full the exact limiting density and the deviation are included.
    """
    x = _require_x(x)
    if subset != "all":
        _require_h(h)
    total, (div,) = divisible_counts(desc, subset, h, x, [prime])
    observed = div / total if total else math.nan
    if subset == "hfree":
        lam: float | None = float(hfree_prime_divisor_density(prime.norm, h))
    elif subset == "hfull":
        lam = hfull_prime_divisor_density(prime.norm, h)
    else:
        lam = None
    err = observed - lam if lam is not None else None
    return DensityEstimate(
        label=desc.label,
        subset=subset,
        h=None if subset == "all" else h,
        x=x,
        prime=prime,
        density=lam,
        observed=observed,
        error=err,
    )
