from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from oracles import dirichlet_l

from idealstats.constants import (
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
from idealstats.errors import MathDomainError, PrecisionError
from idealstats.primeideals import character_table

mpmath.mp.dps = 30


def _zeta(s: float) -> float:
    return float(mpmath.zeta(s))


# ------------------------------------------------------------- the polynomial


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _alpha_reference(h: int) -> tuple[int, ...]:
    # (1 - v + v^h)(1 + v + ... + v^(h-1)) prod_{j=h+1}^{2h-1} (1 - v^j):
    # same product, but the 1/(1-v) is cancelled against the j=h factor
    # up front, so no polynomial division is involved
    poly = _poly_mul([1, -1] + [0] * (h - 2) + [1], [1] * h)
    for j in range(h + 1, 2 * h):
        poly = _poly_mul(poly, [1] + [0] * (j - 1) + [-1])
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def test_alpha_h2_is_one_minus_v6():
    assert hfull_euler_polynomial(2).coefficients == (1, 0, 0, 0, 0, 0, -1)


@pytest.mark.parametrize("h", [2, 3, 4, 5, 6])
def test_alpha_matches_division_free_expansion(h):
    assert hfull_euler_polynomial(h).coefficients == _alpha_reference(h)


@pytest.mark.parametrize("h", [2, 3, 4, 5, 6])
def test_alpha_structural_invariants(h):
    poly = hfull_euler_polynomial(h)
    assert poly.coefficient(0) == 1
    for k in range(1, 2 * h + 2):
        assert poly.coefficient(k) == 0
    assert poly.coefficient(2 * h + 2) == -1
    assert poly.degree <= (3 * h * h + h - 2) // 2
    assert max(abs(c) for c in poly.coefficients) <= h * 2**h


def test_alpha_rejects_small_h():
    with pytest.raises(MathDomainError):
        hfull_euler_polynomial(1)


def test_int_polynomial_horner():
    p = IntPolynomial((3, 0, -2, 5))
    for v in (-1.5, 0.0, 0.25, 2.0):
        assert p(v) == pytest.approx(3 - 2 * v**2 + 5 * v**3, rel=1e-15)
    assert p.degree == 3
    assert p.coefficient(7) == 0


# ------------------------------------------------------------- Euler products


@pytest.mark.parametrize("s", [2.0, 3.0, 4.0])
def test_zeta_rational_against_mpmath(Q, s):
    got = dedekind_zeta(Q, s, tol=1e-9)
    assert got.value == pytest.approx(_zeta(s), abs=5e-9)
    assert got.tail_bound <= 1e-9
    assert got.truncation_norm >= 10**4


def test_zeta_rational_low_exponent(Q):
    got = dedekind_zeta(Q, 1.5, tol=1e-7)
    assert got.value == pytest.approx(_zeta(1.5), abs=5e-7)


def test_zeta_gaussian_catalan(Qi):
    # zeta_Qi(2) = zeta(2) L(chi_-4, 2) and L(chi_-4, 2) is Catalan's constant
    expected = float(mpmath.zeta(2) * mpmath.catalan)
    assert dedekind_zeta(Qi, 2.0, tol=1e-9).value == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("label", ["Qsqrt-3", "Qsqrt2", "Qsqrt5"])
def test_zeta_quadratic_factorizes(fields, label):
    # zeta_K = zeta * L(chi_D) with L evaluated as a plain character sum
    desc = fields[label]
    ell = dirichlet_l(character_table(desc.discriminant), 2.0)
    expected = _zeta(2.0) * ell
    assert dedekind_zeta(desc, 2.0, tol=1e-9).value == pytest.approx(expected, abs=2e-8)


def test_zeta_domain_and_tolerance_errors(Q):
    with pytest.raises(MathDomainError):
        dedekind_zeta(Q, 1.0)
    with pytest.raises(MathDomainError):
        dedekind_zeta(Q, 2.0, tol=0.0)
    with pytest.raises(PrecisionError):
        dedekind_zeta(Q, 1.2, tol=1e-12)


def test_gamma2_rational_zeta_identity(Q):
    # gamma_2 = zeta(3/2)/zeta(3) for the rational field
    expected = float(mpmath.zeta(1.5) / mpmath.zeta(3))
    got = hfull_density_constant(Q, 2, tol=1e-6)
    assert got.value == pytest.approx(expected, abs=1e-6)


def test_gamma_forms_correlate(Qi):
    # the two forms share the truncation point, so they agree far beyond
    # the individual tail accuracy
    direct, split = hfull_density_constant_forms(Qi, 2, tol=1e-5)
    assert direct.truncation_norm == split.truncation_norm
    assert abs(direct.value - split.value) <= 1e-9 * direct.value


@pytest.mark.parametrize("label", ["Q", "Qi"])
def test_correction_series_h2_is_inverse_zeta6s(fields, label):
    # for h=2 the polynomial is 1 - v^6, so G_2(s) = 1/zeta_K(6s)
    desc = fields[label]
    g = hfull_correction_series(desc, 2, 0.5, tol=1e-9)
    z = dedekind_zeta(desc, 3.0, tol=1e-9)
    assert g.value == pytest.approx(1.0 / z.value, abs=1e-8)


def test_correction_series_domain(Q):
    with pytest.raises(MathDomainError):
        hfull_correction_series(Q, 2, 1.0 / 6.0)
    with pytest.raises(MathDomainError):
        hfull_correction_series(Q, 1, 0.5)
    assert hfull_correction_series(Q, 2, 0.3, tol=1e-6).value > 0


def test_euler_value_bookkeeping(Q):
    got = dedekind_zeta(Q, 2.0, tol=1e-6)
    assert got.terms_used > 0
    assert got.tail_bound <= 1e-6
    assert got.value > 1.0


# ----------------------------------------------------------------- densities


@pytest.mark.parametrize(
    "norm, h, expected",
    [(2, 2, Fraction(1, 3)), (3, 2, Fraction(1, 4)), (5, 2, Fraction(1, 6)),
     (2, 3, Fraction(3, 7)), (3, 3, Fraction(4, 13)), (4, 2, Fraction(3, 15))],
)
def test_hfree_density_exact(norm, h, expected):
    assert hfree_prime_divisor_density(norm, h) == expected


def test_hfree_density_monotone():
    for h in (2, 3):
        vals = [hfree_prime_divisor_density(n, h) for n in (2, 3, 4, 5, 7, 9)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
    # densities grow with h toward 1/N
    for n in (2, 3, 5):
        assert (hfree_prime_divisor_density(n, 2)
                < hfree_prime_divisor_density(n, 3)
                < hfree_prime_divisor_density(n, 4)
                < Fraction(1, n))


def test_hfull_density_values():
    lam = hfull_prime_divisor_density(2, 2)
    assert lam == pytest.approx(1.0 / (2.0 * (1.5 - 2.0**-0.5)), rel=1e-15)
    for h in (2, 3):
        vals = [hfull_prime_divisor_density(n, h) for n in (2, 3, 4, 5, 9)]
        assert all(1 > a > b > 0 for a, b in zip(vals, vals[1:]))


def test_coprime_factors_complement_densities():
    for h in (2, 3, 4):
        for n in (2, 3, 4, 5, 9, 25):
            assert hfree_coprime_factor(n, h) == 1 - hfree_prime_divisor_density(n, h)
            # independent algebraic form: N a / (N a + 1) with a = 1 - N^(-1/h)
            a = 1.0 - n ** (-1.0 / h)
            assert hfull_coprime_factor(n, h) == pytest.approx(
                n * a / (n * a + 1.0), rel=1e-14
            )
            assert hfull_coprime_factor(n, h) == pytest.approx(
                1.0 - hfull_prime_divisor_density(n, h), rel=1e-12
            )


def test_density_domain_errors():
    for fn in (hfree_prime_divisor_density, hfull_prime_divisor_density):
        with pytest.raises(MathDomainError):
            fn(2, 1)
        with pytest.raises(MathDomainError):
            fn(1, 2)
