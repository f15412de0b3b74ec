"""Normality statistics for prime-factor counts of ideals.

For an ideal of norm N >= 3 the studentized factor count is

    z = (omega - loglog N) / sqrt(loglog N)

with omega the number of distinct prime ideal divisors and natural logs
throughout.  Over all ideals of norm <= x (or the h-free / h-full ones)
the empirical distribution of z approaches the standard normal law; the
Kolmogorov-Smirnov distance here is the exact sup over both sides of every
jump of the empirical CDF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from . import kernels
from .counting import subset_table
from .errors import EmptySampleError, MathDomainError
from .fields import FieldDescriptor

_SQRT2 = math.sqrt(2.0)


def phi(g: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-g / _SQRT2)


def _phi_vec(z: np.ndarray) -> np.ndarray:
    return ndtr(z)


def gaussian_moment(r: int) -> float:
    """r-th moment of the standard normal: 0 for odd r, (r-1)!! for even."""
    if r < 0:
        raise MathDomainError("moment order must be >= 0")
    if r % 2:
        return 0.0
    out = 1.0
    for k in range(r - 1, 0, -2):
        out *= k
    return out


@dataclass(frozen=True)
class NormalizedSample:
    """Studentized factor counts for one field, subset and bound."""

    label: str
    subset: str
    h: int | None
    x: int
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


def ek_sample(desc: FieldDescriptor, subset: str, h: int, x: int) -> NormalizedSample:
    """All z-values for subset members of norm in [3, x], traversal order."""
    x = int(x)
    if x < 3:
        raise EmptySampleError(f"no ideals of norm >= 3 below {x}")
    table = subset_table(desc, subset, h, x)
    values = kernels.ek_z(table.norm, x, kernels.subset_code(subset), h)
    if len(values) == 0:
        raise EmptySampleError(f"subset {subset} empty below {x}")
    return NormalizedSample(
        label=desc.label,
        subset=subset,
        h=None if subset == "all" else h,
        x=x,
        values=values,
    )


def ks_distance(sample: NormalizedSample) -> float:
    """Exact Kolmogorov-Smirnov distance to the standard normal."""
    z = np.sort(sample.values)
    n = len(z)
    if n == 0:
        raise EmptySampleError("empty sample")
    c = _phi_vec(z)
    steps = np.arange(1, n + 1, dtype=np.float64) / n
    d_plus = float(np.max(steps - c))
    d_minus = float(np.max(c - (steps - 1.0 / n)))
    return max(d_plus, d_minus)


def empirical_moments(sample: NormalizedSample, r_max: int = 4) -> list[tuple[int, float]]:
    """Mean of z^r for r = 1..r_max (Gaussian reference: 0, 1, 0, 3, ...)."""
    if r_max < 1:
        raise MathDomainError("r_max must be >= 1")
    z = sample.values
    out = []
    power = np.ones_like(z)
    for r in range(1, r_max + 1):
        power = power * z
        out.append((r, float(np.mean(power))))
    return out


@dataclass(frozen=True)
class KSReport:
    """KS distance, low moments and a fixed-window histogram of z-values."""

    label: str
    subset: str
    h: int | None
    x: int
    n: int
    ks: float
    moments: tuple[float, ...]
    bin_edges: np.ndarray
    bin_counts: np.ndarray
    empirical_cdf: np.ndarray
    reference_cdf: np.ndarray


def ks_report(
    sample: NormalizedSample, bins: int = 40, lo: float = -4.0, hi: float = 4.0
) -> KSReport:
    """Bundle KS distance, moments 1..4 and a histogram over [lo, hi].

    The histogram drops values outside the window; the per-bin CDFs are
    evaluated at right bin edges over the full sample.
    """
    if bins < 1 or not hi > lo:
        raise MathDomainError("need bins >= 1 and hi > lo")
    z = np.sort(sample.values)
    n = len(z)
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(z, bins=edges)
    ecdf = np.searchsorted(z, edges[1:], side="right") / n
    return KSReport(
        label=sample.label,
        subset=sample.subset,
        h=sample.h,
        x=sample.x,
        n=n,
        ks=ks_distance(sample),
        moments=tuple(v for _, v in empirical_moments(sample, 4)),
        bin_edges=edges,
        bin_counts=counts,
        empirical_cdf=ecdf,
        reference_cdf=_phi_vec(edges[1:]),
    )
