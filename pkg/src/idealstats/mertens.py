"""Mertens-type sums over prime ideals and ideals, with constant fitting.

The seven classical shapes covered by the reciprocal-sum lemma:

    1  sum_{N(p) <= x} N^-alpha           ~ x^(1-alpha) / ((1-alpha) log x)   (alpha < 1)
    2  sum_{N(m) <= x} N^-alpha           ~ kappa x^(1-alpha) / (1-alpha)     (alpha < 1)
    3  sum_{N(p) <= x} log(N) / N         ~ log x
    4  sum_{N(p) <= x} 1/N                = loglog x + A_K + O(1/log x)
    5  sum_{N(m) <= x} 1/N                = kappa log x + B_K + O(...)
    6  sum_{N(p) >= x} N^-alpha           ~ 1 / ((alpha-1) x^(alpha-1) log x) (alpha > 1)
    7  sum_{N(m) >= x} N^-alpha           ~ kappa / ((alpha-1) x^(alpha-1))   (alpha > 1)

fit_constant extracts A_K (part 4) or B_K (part 5) by averaging the
residual over the top half of a geometric grid, where the O-terms have
mostly died down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import dedekind_zeta
from .counting import ideal_counts_by_norm
from .errors import MathDomainError
from .fields import FieldDescriptor
from .primeideals import prime_ideal_norms

_CHUNK = 1 << 16


def _chunked_sum(values: np.ndarray) -> float:
    partials = [float(np.sum(values[i : i + _CHUNK])) for i in range(0, len(values), _CHUNK)]
    return math.fsum(partials)


def prime_reciprocal_sum(desc: FieldDescriptor, x: int | float, alpha: float = 1.0) -> float:
    """sum of N(p)^-alpha over prime ideals of norm <= x, smallest norms first."""
    if x < 2:
        return 0.0
    norms = prime_ideal_norms(desc, int(x)).astype(np.float64)
    return _chunked_sum(np.power(norms, -alpha))


def prime_log_weight_sum(desc: FieldDescriptor, x: int | float) -> float:
    """sum of log(N(p))/N(p) over prime ideals of norm <= x (part 3 shape)."""
    if x < 2:
        return 0.0
    norms = prime_ideal_norms(desc, int(x)).astype(np.float64)
    return _chunked_sum(np.log(norms) / norms)


def ideal_reciprocal_sum(desc: FieldDescriptor, x: int | float, alpha: float = 1.0) -> float:
    """sum of N(m)^-alpha over all ideals of norm <= x, unit ideal included."""
    bound = int(x)
    if bound < 1:
        raise MathDomainError("x must be >= 1")
    if desc.degree == 1:
        n = np.arange(1, bound + 1, dtype=np.float64)
        return _chunked_sum(np.power(n, -alpha))
    counts = ideal_counts_by_norm(desc, bound)
    n = np.arange(1, bound + 1, dtype=np.float64)
    return _chunked_sum(counts[1:].astype(np.float64) * np.power(n, -alpha))


def prime_tail_sum(
    desc: FieldDescriptor, x: int | float, alpha: float, cutoff: int | float = 10**8
) -> float:
    """sum of N(p)^-alpha over prime ideals of norm >= x, by subtraction.

    Empirical: primes are enumerated up to the cutoff and summed from x on;
    the neglected remainder beyond the cutoff is O(cutoff^(1-alpha)).
    """
    if alpha <= 1:
        raise MathDomainError("tail sums need alpha > 1")
    if x > cutoff:
        raise MathDomainError("x beyond enumeration cutoff")
    norms = prime_ideal_norms(desc, int(cutoff)).astype(np.float64)
    norms = norms[norms >= x]
    return _chunked_sum(np.power(norms, -alpha))


def ideal_tail_sum(desc: FieldDescriptor, x: int | float, alpha: float) -> float:
    """sum of N(m)^-alpha over ideals of norm >= x: zeta_K(alpha) minus the prefix."""
    if alpha <= 1:
        raise MathDomainError("tail sums need alpha > 1")
    total = dedekind_zeta(desc, alpha, tol=1e-9).value
    if x <= 1:
        return total
    prefix = ideal_reciprocal_sum(desc, int(x) - 1, alpha)
    return total - prefix


@dataclass(frozen=True)
class MertensFit:
    """Empirical sums on a grid next to their model, residuals included."""

    part: int
    label: str
    x_grid: tuple[int, ...]
    empirical: tuple[float, ...]
    model: tuple[float, ...]
    fitted_constant: float
    residuals: tuple[float, ...]


def _part_sum(desc: FieldDescriptor, part: int, x: int, alpha: float) -> float:
    if part in (1, 3, 4):
        if part == 3:
            return prime_log_weight_sum(desc, x)
        return prime_reciprocal_sum(desc, x, alpha if part == 1 else 1.0)
    if part in (2, 5):
        return ideal_reciprocal_sum(desc, x, alpha if part == 2 else 1.0)
    if part == 6:
        return prime_tail_sum(desc, x, alpha)
    if part == 7:
        return ideal_tail_sum(desc, x, alpha)
    raise MathDomainError(f"part must be 1..7, got {part}")


def _shape_model(desc: FieldDescriptor, part: int, x: int, alpha: float) -> float:
    kappa = desc.kappa
    if part == 1:
        return x ** (1.0 - alpha) / ((1.0 - alpha) * math.log(x))
    if part == 2:
        return kappa * x ** (1.0 - alpha) / (1.0 - alpha)
    if part == 3:
        return math.log(x)
    if part == 4:
        return math.log(math.log(x))
    if part == 5:
        return kappa * math.log(x)
    if part == 6:
        return 1.0 / ((alpha - 1.0) * x ** (alpha - 1.0) * math.log(x))
    if part == 7:
        return kappa / ((alpha - 1.0) * x ** (alpha - 1.0))
    raise MathDomainError(f"part must be 1..7, got {part}")


def fit_constant(
    desc: FieldDescriptor,
    part: int,
    x_grid: tuple[int, ...] | list[int],
    alpha: float = 2.0,
) -> MertensFit:
    """Evaluate one reciprocal-sum shape on a grid; fit A_K or B_K for parts 4, 5.

    The fitted constant is the mean of (empirical - shape) over the top half
    of the grid.  For parts other than 4 and 5 the constant is defined as 0
    and the model is the bare shape.
    """
    grid = tuple(int(v) for v in x_grid)
    if not grid or any(g < 3 for g in grid) or list(grid) != sorted(grid):
        raise MathDomainError("x_grid must be ascending with entries >= 3")
    empirical = tuple(_part_sum(desc, part, g, alpha) for g in grid)
    shape = tuple(_shape_model(desc, part, g, alpha) for g in grid)
    if part in (4, 5):
        top = len(grid) - max(1, len(grid) // 2)
        fitted = math.fsum(e - s for e, s in zip(empirical[top:], shape[top:])) / (
            len(grid) - top
        )
    else:
        fitted = 0.0
    model = tuple(s + fitted for s in shape)
    residuals = tuple(e - m for e, m in zip(empirical, model))
    return MertensFit(
        part=part,
        label=desc.label,
        x_grid=grid,
        empirical=empirical,
        model=model,
        fitted_constant=fitted,
        residuals=residuals,
    )
