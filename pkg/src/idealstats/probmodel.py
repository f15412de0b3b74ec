"""Independent Bernoulli model for prime divisibility, and its audit.

One Bernoulli variable per prime ideal of norm <= y, firing with the exact
limiting divisibility density of the subset.  The sum S_y models omega_y,
the number of small prime ideal factors.  The truncation height is

    h-free:  y = x^(1/loglog x)
    h-full:  y = x^(1/(h loglog x))

The audit evaluates the sufficient conditions under which moments of the
empirical omega_y transfer to S_y: tail density sums, empirical density
errors, the loglog x comparison, squared densities, and joint error terms
over sampled prime tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .constants import hfree_prime_divisor_density, hfull_prime_divisor_density
from .counting import norm_bound, subset_table
from .errors import DegenerateSystemError, MathDomainError
from .fields import FieldDescriptor
from .primeideals import PrimeIdeal

DEFAULT_SEED = 20_240_821


def truncation_height(subset: str, h: int, x: int | float) -> float:
    """The y below which primes enter the Bernoulli system."""
    if x <= 15:  # loglog must exceed 0
        raise MathDomainError("x too small for a truncation height")
    ll = math.log(math.log(x))
    if subset == "hfree":
        return x ** (1.0 / ll)
    if subset == "hfull":
        if h < 2:
            raise MathDomainError("h must be >= 2")
        return x ** (1.0 / (h * ll))
    raise MathDomainError("truncation height is defined for hfree and hfull")


def _density(subset: str, norm: int, h: int) -> float:
    if subset == "hfree":
        return float(hfree_prime_divisor_density(norm, h))
    if subset == "hfull":
        return hfull_prime_divisor_density(norm, h)
    raise MathDomainError(f"no density model for subset {subset!r}")


@dataclass(frozen=True)
class BernoulliSystem:
    """Success probabilities indexed by the prime ideals of norm <= y."""

    label: str
    subset: str
    h: int
    x: int
    y: float
    primes: tuple[PrimeIdeal, ...]
    probabilities: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.probabilities)


def bernoulli_system(
    desc: FieldDescriptor, subset: str, h: int, x: int, y: float | None = None
) -> BernoulliSystem:
    x = int(x)
    if y is None:
        y = truncation_height(subset, h, x)
    table = subset_table(desc, subset, h, x).truncate(int(y))
    primes = tuple(table.ideal(i) for i in range(len(table)))
    probs = tuple(_density(subset, p.norm, h) for p in primes)
    return BernoulliSystem(
        label=desc.label, subset=subset, h=h, x=x, y=float(y), primes=primes,
        probabilities=probs,
    )


def mean_variance(system: BernoulliSystem) -> tuple[float, float]:
    """Exact mean and variance of the Bernoulli sum."""
    mean = math.fsum(system.probabilities)
    var = math.fsum(p * (1.0 - p) for p in system.probabilities)
    return mean, var


def distribution(system: BernoulliSystem) -> np.ndarray:
    """Exact probability mass of S = sum of the Bernoulli variables.

    Sequential convolution: absorbing one variable with probability p maps
    q_k to q_k (1-p) + q_{k-1} p.  The result must sum to 1 within 1e-12.
    """
    pmf = np.zeros(len(system) + 1)
    pmf[0] = 1.0
    for i, p in enumerate(system.probabilities):
        head = pmf[: i + 2].copy()
        pmf[: i + 2] = head * (1.0 - p)
        pmf[1 : i + 2] += head[:-1] * p
    if abs(float(pmf.sum()) - 1.0) > 1e-12:
        raise ArithmeticError("Bernoulli convolution lost mass beyond 1e-12")
    return pmf


def normalized_moment(system: BernoulliSystem, r: int) -> float:
    """E[((S - mu)/sigma)^r] from the exact distribution."""
    if r < 1:
        raise MathDomainError("moment order must be >= 1")
    mu, var = mean_variance(system)
    if var <= 0:
        raise DegenerateSystemError("zero-variance system cannot be normalized")
    sigma = math.sqrt(var)
    pmf = distribution(system)
    k = np.arange(len(pmf), dtype=np.float64)
    return float(math.fsum(pmf * ((k - mu) / sigma) ** r))


def sample_sums(system: BernoulliSystem, draws: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Monte Carlo draws of S, one uniform stream per prime, fixed seed."""
    if draws < 1:
        raise MathDomainError("need at least one draw")
    rng = np.random.default_rng(seed)
    total = np.zeros(draws, dtype=np.int32)
    for p in system.probabilities:
        total += rng.random(draws) < p
    return total


def moment_gap(
    desc: FieldDescriptor, subset: str, h: int, x: int, y: float | None = None, r: int = 2
) -> float:
    """|empirical moment of omega_y - model moment of S| at order r.

    Both sides are centered and scaled by the model mean and standard
    deviation, so the gap is exactly the transfer error the moment method
    must beat.
    """
    system = bernoulli_system(desc, subset, h, int(x), y)
    mu, var = mean_variance(system)
    if var <= 0:
        raise DegenerateSystemError("zero-variance system")
    sigma = math.sqrt(var)
    table = subset_table(desc, subset, h, int(x))
    count, sums = kernels.centered_omega_y_moments(
        table.norm, int(x), kernels.subset_code(subset), h, system.y, mu, sigma, r
    )
    empirical = sums[r - 1] / count
    k = np.arange(len(system) + 1, dtype=np.float64)
    pmf = distribution(system)
    exact = float(math.fsum(pmf * ((k - mu) / sigma) ** r))
    return abs(float(empirical) - exact)


# ------------------------------------------------------------------ the audit


@dataclass(frozen=True)
class AuditReport:
    """Observed values of the moment-transfer conditions at one (x, subset).

    Raw values first; `normalized` divides the tail conditions by
    sqrt(loglog x) and scales the tuple errors by (loglog x)^(r_max/2),
    turning every o(.) claim into a quantity that should drift down.
    """

    label: str
    subset: str
    h: int
    x: int
    beta: float
    y: float
    members: int
    max_factors_above_beta: int
    tail_density_sum: float
    tail_abs_error_sum: float
    small_density_sum: float
    loglog_gap: float
    small_density_sq_sum: float
    tuple_error_sums: dict[int, float]
    tracked_norms: tuple[int, ...]
    normalized: dict[str, float]


def conditions_audit(
    desc: FieldDescriptor,
    subset: str,
    h: int,
    x: int,
    r_max: int = 3,
    seed: int = DEFAULT_SEED,
) -> AuditReport:
    """Evaluate the sufficient conditions for moment transfer empirically.

    beta is 1 for h-free and 1/h for h-full; primes above x^beta cannot
    divide a member, so the first condition reports an observed maximum
    (expected 0) rather than assuming it.  Joint divisibility errors are
    measured over all tuples from the r_max smallest prime ideals plus a
    seeded random draw of further primes below y, up to eight in total;
    tuple error sums count ordered tuples, hence the u! weight.
    """
    if r_max < 1 or r_max > 3:
        raise MathDomainError("r_max must be 1..3")
    x = int(x)
    system = bernoulli_system(desc, subset, h, x)
    y = system.y
    beta = 1.0 if subset == "hfree" else 1.0 / h
    x_beta = int(x**beta) if subset == "hfree" else norm_bound("hfull", h, x)

    table = subset_table(desc, subset, h, x)
    code = kernels.subset_code(subset)
    members, div_counts, max_above = kernels.large_factor_stats(
        table.norm, x, code, h, int(y), x_beta
    )

    norms = table.norm
    lam = np.array(
        [_density(subset, int(n), h) for n in norms], dtype=np.float64
    )
    in_tail = (norms > int(y)) & (norms <= x_beta)
    tail_density = float(math.fsum(lam[in_tail]))
    observed = div_counts / members
    tail_abs_error = float(math.fsum(np.abs(observed[in_tail] - lam[in_tail])))

    small_density = math.fsum(system.probabilities)
    loglog_gap = abs(small_density - math.log(math.log(x)))
    small_sq = math.fsum(p * p for p in system.probabilities)

    # Tracked tuple family: smallest r_max primes, then a seeded sample.
    n_small = len(system)
    base = list(range(min(r_max, n_small)))
    rng = np.random.default_rng(seed)
    rest = [i for i in range(n_small) if i not in base]
    extra = min(8 - len(base), len(rest))
    if extra > 0:
        base += sorted(int(i) for i in rng.choice(rest, size=extra, replace=False))
    tracked = [int(i) for i in base]
    tracked_norms = tuple(int(norms[i]) for i in tracked)

    total, hist = kernels.mask_hist(
        norms, x, code, h, np.array(tracked, dtype=np.int64)
    )
    patterns = np.arange(256)
    tuple_sums: dict[int, float] = {}
    for u in range(1, r_max + 1):
        weight = math.factorial(u)
        acc = 0.0
        for combo in combinations(range(len(tracked)), u):
            bits = sum(1 << c for c in combo)
            joint = int(hist[(patterns & bits) == bits].sum())
            model = math.prod(float(lam[tracked[c]]) for c in combo)
            acc += abs(joint / total - model) * weight
        tuple_sums[u] = acc

    ll = math.log(math.log(x))
    normalized = {
        "tail_density_sum": tail_density / math.sqrt(ll),
        "tail_abs_error_sum": tail_abs_error / math.sqrt(ll),
        "small_density_sq_sum": small_sq / math.sqrt(ll),
    }
    for u, v in tuple_sums.items():
        normalized[f"tuple_error_sum_{u}"] = v * ll ** (r_max / 2.0)

    return AuditReport(
        label=desc.label,
        subset=subset,
        h=h,
        x=x,
        beta=beta,
        y=y,
        members=members,
        max_factors_above_beta=int(max_above),
        tail_density_sum=tail_density,
        tail_abs_error_sum=tail_abs_error,
        small_density_sum=small_density,
        loglog_gap=loglog_gap,
        small_density_sq_sum=small_sq,
        tuple_error_sums=tuple_sums,
        tracked_norms=tracked_norms,
        normalized=normalized,
    )
