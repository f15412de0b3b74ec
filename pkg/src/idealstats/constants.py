"""Euler-product constants and the exact polynomial identity behind h-full counts.

All Euler products run over prime ideal norms up to an adaptive truncation
point P and are completed with a tail estimate: the sum of log-factors over
norms > P is modelled by integrating the log-factor against the logarithmic
density of prime ideal norms (dt/log t, with the classical half-power
correction for the rational field).  The reported tail_bound is four times
P^(1/2 - alpha_min), the scale of the prime-counting fluctuation left after
that correction; the safety factor and the fluctuation model are heuristic
and recorded as such.  Truncation grows geometrically until the bound meets
the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import MathDomainError, PrecisionError
from .fields import FieldDescriptor
from .primeideals import prime_ideal_norms

_P_START = 10_000
_P_MAX = 300_000_000
_CHUNK = 1 << 16


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coefficients[k] multiplies v^k."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, v: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * v + c
        return acc

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_one_minus_v(a: list[int]) -> list[int]:
    # Synthetic division by (1 - v): a_k = q_k - q_{k-1}, so q_k = a_k + q_{k-1}.
    q: list[int] = []
    carry = 0
    for coeff in a[:-1]:
        carry += coeff
        q.append(carry)
    if carry + a[-1] != 0:
        raise ArithmeticError("polynomial is not divisible by (1 - v)")
    return q


@lru_cache(maxsize=None)
def hfull_euler_polynomial(h: int) -> IntPolynomial:
    """Expansion of (1 - v + v^h)/(1 - v) * prod_{j=h}^{2h-1} (1 - v^j).

    This is the local Euler factor of the h-full Dirichlet series divided by
    its zeta-like leading parts: it equals 1 - v^(2h+2) plus correction terms
    of degree 2h+3 .. (3h^2+h-2)/2, every coefficient bounded by h*2^h in
    absolute value.  For h=2 it collapses to exactly 1 - v^6.
    """
    if h < 2:
        raise MathDomainError("h must be >= 2")
    num = [1, -1] + [0] * (h - 2) + [1]  # 1 - v + v^h
    for j in range(h, 2 * h):
        num = _poly_mul(num, [1] + [0] * (j - 1) + [-1])  # 1 - v^j
    coeffs = _poly_div_one_minus_v(num)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    poly = IntPolynomial(tuple(coeffs))
    if poly.coefficient(0) != 1 or poly.coefficient(2 * h + 2) != -1:
        raise ArithmeticError("h-full Euler polynomial identity violated")
    return poly


# ------------------------------------------------------------- Euler products


@dataclass(frozen=True)
class EulerProductValue:
    """A truncated Euler product with its tail accounting."""

    value: float
    truncation_norm: int
    tail_bound: float
    terms_used: int


def _chunked_kahan(values: np.ndarray) -> float:
    """Compensated total: pairwise numpy sums per chunk, fsum across chunks."""
    if len(values) == 0:
        return 0.0
    partials = [float(np.sum(values[i : i + _CHUNK])) for i in range(0, len(values), _CHUNK)]
    return math.fsum(partials)


def _norm_density(desc: FieldDescriptor) -> Callable[[float], float]:
    # Density of prime ideal norms near t.  For quadratic fields the inert
    # squares fill in the half-power deficit of the rational primes, so the
    # plain 1/log t is already correct to higher order.
    if desc.degree == 1:
        return lambda t: (1.0 - 0.5 / math.sqrt(t)) / math.log(t)
    return lambda t: 1.0 / math.log(t)


def _tail_integral(
    desc: FieldDescriptor, log_factor: Callable[[np.ndarray], np.ndarray], P: int
) -> float:
    # Integrate in w = log(t/P): the factor decays like t^(1-alpha), so the
    # transformed integrand falls off exponentially and quad converges fast
    # (a direct (P, inf) quadrature stalls on these slow power tails).
    dens = _norm_density(desc)

    def integrand(w: float) -> float:
        # decay rate is at least 1/6 per unit w, so 200 is already ~1e-15;
        # beyond that t*t would overflow double range inside the factors
        if w > 200.0:
            return 0.0
        t = P * math.exp(w)
        return float(log_factor(np.array([t], dtype=np.float64))[0]) * dens(t) * t

    val, _ = quad(integrand, 0.0, np.inf, epsabs=1e-16, epsrel=1e-10, limit=400)
    return val


def _euler_product(
    desc: FieldDescriptor,
    log_factor: Callable[[np.ndarray], np.ndarray],
    alpha_min: float,
    tol: float,
) -> EulerProductValue:
    """exp(sum of log-factors over prime ideal norms, tail-completed)."""
    if tol <= 0:
        raise MathDomainError("tol must be positive")
    if alpha_min <= 1:
        raise MathDomainError("product diverges: leading exponent must exceed 1")
    P = _P_START
    while 4.0 * P ** (0.5 - alpha_min) > tol:
        P *= 4
        if P > _P_MAX:
            raise PrecisionError(
                f"tolerance {tol} unreachable at truncation cap {_P_MAX} "
                f"(leading exponent {alpha_min})"
            )
    bound = 4.0 * P ** (0.5 - alpha_min)
    norms = prime_ideal_norms(desc, P).astype(np.float64)
    head = _chunked_kahan(log_factor(norms))
    tail = _tail_integral(desc, log_factor, P)
    return EulerProductValue(
        value=math.exp(head + tail),
        truncation_norm=P,
        tail_bound=bound,
        terms_used=len(norms),
    )


def dedekind_zeta(desc: FieldDescriptor, s: float, tol: float = 1e-8) -> EulerProductValue:
    """zeta_K(s) = prod over prime ideals of (1 - N^-s)^-1, for s > 1."""
    if s <= 1:
        raise MathDomainError(f"zeta_K converges only for s > 1, got s={s}")

    def log_factor(t: np.ndarray) -> np.ndarray:
        return -np.log1p(-np.power(t, -s))

    return _euler_product(desc, log_factor, alpha_min=s, tol=tol)


def _hfull_log_factor_direct(h: int) -> Callable[[np.ndarray], np.ndarray]:
    inv_h = 1.0 / h

    def log_factor(t: np.ndarray) -> np.ndarray:
        root = np.power(t, inv_h)
        return np.log1p((t - root) / (t * t * (root - 1.0)))

    return log_factor


def _hfull_log_factor_split(h: int) -> Callable[[np.ndarray], np.ndarray]:
    inv_h = 1.0 / h

    def log_factor(t: np.ndarray) -> np.ndarray:
        return np.log1p(1.0 / (t * (1.0 - np.power(t, -inv_h)))) + np.log1p(-1.0 / t)

    return log_factor


def hfull_density_constant_forms(
    desc: FieldDescriptor, h: int, tol: float = 1e-7
) -> tuple[EulerProductValue, EulerProductValue]:
    """Both Euler-product forms of the h-full constant, not yet reconciled.

    The first is the single-fraction form 1 + (N - N^(1/h))/(N^2 (N^(1/h)-1)),
    the second the split form (1 + N^-1/(1 - N^(-1/h)))(1 - 1/N).
    """
    if h < 2:
        raise MathDomainError("h must be >= 2")
    alpha_min = 1.0 + 1.0 / h
    direct = _euler_product(desc, _hfull_log_factor_direct(h), alpha_min, tol)
    split = _euler_product(desc, _hfull_log_factor_split(h), alpha_min, tol)
    return direct, split


def hfull_density_constant(
    desc: FieldDescriptor, h: int, tol: float = 1e-7
) -> EulerProductValue:
    """Leading constant of the h-full ideal count (the x^(1/h) coefficient).

    Product over prime ideals of 1 + (N - N^(1/h)) / (N^2 (N^(1/h) - 1)).
    The algebraically equivalent split form is evaluated independently and
    the two must agree within 2*tol; a mismatch means a transcription bug,
    not a numerical issue.
    """
    direct, split = hfull_density_constant_forms(desc, h, tol)
    if abs(direct.value - split.value) > 2 * tol * abs(direct.value):
        raise ArithmeticError(
            f"h-full constant forms disagree: {direct.value!r} vs {split.value!r}"
        )
    return direct


def hfull_correction_series(
    desc: FieldDescriptor, h: int, s: float, tol: float = 1e-8
) -> EulerProductValue:
    """The absolutely convergent factor G left after peeling zeta terms.

    G(s) = prod over prime ideals of (1 - N^(-(2h+2)s) + corrections) using
    the exact integer polynomial from hfull_euler_polynomial; converges for
    s > 1/(2h+2).  For h=2 the polynomial is 1 - v^6, so G(s) = 1/zeta_K(6s).
    """
    if h < 2:
        raise MathDomainError("h must be >= 2")
    if s <= 1.0 / (2 * h + 2):
        raise MathDomainError(f"series converges only for s > 1/{2 * h + 2}, got s={s}")
    poly = hfull_euler_polynomial(h)
    terms = [(k, c) for k, c in enumerate(poly.coefficients) if c and k > 0]

    def log_factor(t: np.ndarray) -> np.ndarray:
        u = np.power(t, -s)
        small = np.zeros_like(t)
        for k, c in terms:
            small += c * u**k
        return np.log1p(small)

    alpha_min = (2 * h + 2) * s
    return _euler_product(desc, log_factor, alpha_min, tol)


# ------------------------------------------------------- divisibility densities


def hfree_prime_divisor_density(norm: int, h: int) -> Fraction:
    """Limiting fraction of h-free ideals divisible by a prime of this norm.

    Exactly (N^(h-1) - 1) / (N^h - 1) as a rational number.
    """
    if h < 2:
        raise MathDomainError("h must be >= 2")
    if norm < 2:
        raise MathDomainError("norm must be a prime power >= 2")
    return Fraction(norm ** (h - 1) - 1, norm**h - 1)


def hfull_prime_divisor_density(norm: int, h: int) -> float:
    """Limiting fraction of h-full ideals divisible by a prime of this norm.

    1 / (N (1 - N^(-1/h) + N^(-1))); the density of ideals whose exponent at
    the prime is at least h, within the h-full world.
    """
    if h < 2:
        raise MathDomainError("h must be >= 2")
    if norm < 2:
        raise MathDomainError("norm must be a prime power >= 2")
    n = float(norm)
    return 1.0 / (n * (1.0 - n ** (-1.0 / h) + 1.0 / n))


def hfree_coprime_factor(norm: int, h: int) -> Fraction:
    """Main-term factor for h-free counts restricted to ideals coprime to one prime.

    (N^h - N^(h-1)) / (N^h - 1), the complement of the divisor density.
    """
    return 1 - hfree_prime_divisor_density(norm, h)


def hfull_coprime_factor(norm: int, h: int) -> float:
    """Main-term factor for h-full counts coprime to one prime.

    1 / (1 + N^-1 / (1 - N^(-1/h))): dropping one prime from the defining
    Euler product divides the constant by that prime's local factor.
    """
    if h < 2:
        raise MathDomainError("h must be >= 2")
    n = float(norm)
    return 1.0 / (1.0 + (1.0 / n) / (1.0 - n ** (-1.0 / h)))
