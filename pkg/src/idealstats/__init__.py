"""Statistics of ideals in number fields.

Enumeration of integral ideals by norm for the rational and quadratic
fields, h-free and h-full counting against their main terms, the
Euler-product constants behind those main terms, Mertens-type sums over
prime ideals, the Erdős–Kac normal statistic for the number of prime ideal
factors, and the independent Bernoulli model that explains it.

The enumeration kernels have a compiled backend with a pure-Python
fallback; `BACKEND` names the one in use (set IDEALSTATS_PURE=1 to force
the fallback).
"""

from .catalog import cache_get_or_build, load_catalog
from .constants import (
    EulerProductValue,
    IntPolynomial,
    dedekind_zeta,
    hfree_coprime_factor,
    hfree_prime_divisor_density,
    hfull_coprime_factor,
    hfull_correction_series,
    hfull_density_constant,
    hfull_density_constant_forms,
    hfull_euler_polynomial,
    hfull_prime_divisor_density,
)
from .counting import (
    CountReport,
    count_hfree,
    count_hfree_coprime,
    count_hfull,
    count_hfull_coprime,
    count_ideals,
    count_tuples,
    divisor_density,
    subset_count,
)
from .ekstat import KSReport, NormalizedSample, ek_sample, ks_distance, ks_report, phi
from .errors import (
    CatalogError,
    DegenerateSystemError,
    EmptySampleError,
    IdealstatsError,
    InvalidFieldError,
    MathDomainError,
    PrecisionError,
)
from .fields import FieldDescriptor, quadratic_field, rational_field, split_prime
from .ideals import (
    IdealFactorization,
    enumerate_ideals,
    h_full_decompose,
    is_h_free,
    is_h_full,
    mobius,
    omega,
)
from .kernels import BACKEND
from .mertens import MertensFit, fit_constant
from .primeideals import (
    PrimeIdeal,
    PrimeIdealTable,
    prime_ideal_count,
    prime_ideal_for,
    prime_ideal_table,
    prime_ideals_up_to,
    smallest_prime_ideals,
)
from .probmodel import (
    AuditReport,
    BernoulliSystem,
    bernoulli_system,
    conditions_audit,
    distribution,
    mean_variance,
    moment_gap,
    normalized_moment,
    sample_sums,
    truncation_height,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BACKEND",
    "BernoulliSystem",
    "CatalogError",
    "CountReport",
    "DegenerateSystemError",
    "EmptySampleError",
    "EulerProductValue",
    "FieldDescriptor",
    "IdealFactorization",
    "IdealstatsError",
    "IntPolynomial",
    "InvalidFieldError",
    "KSReport",
    "MathDomainError",
    "MertensFit",
    "NormalizedSample",
    "PrecisionError",
    "PrimeIdeal",
    "PrimeIdealTable",
    "bernoulli_system",
    "cache_get_or_build",
    "conditions_audit",
    "count_hfree",
    "count_hfree_coprime",
    "count_hfull",
    "count_hfull_coprime",
    "count_ideals",
    "count_tuples",
    "dedekind_zeta",
    "distribution",
    "divisor_density",
    "ek_sample",
    "enumerate_ideals",
    "fit_constant",
    "h_full_decompose",
    "hfree_coprime_factor",
    "hfree_prime_divisor_density",
    "hfull_coprime_factor",
    "hfull_correction_series",
    "hfull_density_constant",
    "hfull_density_constant_forms",
    "hfull_euler_polynomial",
    "hfull_prime_divisor_density",
    "is_h_free",
    "is_h_full",
    "ks_distance",
    "ks_report",
    "load_catalog",
    "mean_variance",
    "mobius",
    "moment_gap",
    "normalized_moment",
    "omega",
    "phi",
    "prime_ideal_count",
    "prime_ideal_for",
    "prime_ideal_table",
    "prime_ideals_up_to",
    "quadratic_field",
    "rational_field",
    "sample_sums",
    "smallest_prime_ideals",
    "split_prime",
    "subset_count",
    "truncation_height",
]
