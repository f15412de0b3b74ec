from __future__ import annotations

import math

import pytest

from oracles import legendre_euler, sieve_primes

from idealstats.errors import InvalidFieldError
from idealstats.fields import (
    FieldDescriptor,
    SplitKind,
    discriminant,
    is_prime,
    is_squarefree,
    kronecker,
    quadratic_field,
    rational_field,
    split_prime,
)


# ------------------------------------------------------------- squarefree / disc


def test_is_squarefree_small_range():
    expected = [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30]
    assert [n for n in range(1, 31) if is_squarefree(n)] == expected


def test_is_squarefree_sign_and_zero():
    assert not is_squarefree(0)
    for n in range(1, 50):
        assert is_squarefree(-n) == is_squarefree(n)


@pytest.mark.parametrize(
    "d, D",
    [(-1, -4), (-3, -3), (2, 8), (3, 12), (5, 5), (-7, -7), (10, 40), (13, 13), (-11, -11)],
)
def test_discriminant(d, D):
    assert discriminant(d) == D


@pytest.mark.parametrize("d", [0, 1, 4, 9, 12, 18, -4, -9, 50])
def test_discriminant_rejects_bad_d(d):
    with pytest.raises(InvalidFieldError):
        discriminant(d)


# ------------------------------------------------------------------- kronecker


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97])
def test_kronecker_matches_euler_criterion(p):
    # modular exponentiation is a completely different algorithm than the
    # reciprocity loop, so this is a real cross-check
    for a in range(-30, 31):
        assert kronecker(a, p) == legendre_euler(a, p)


def test_kronecker_bottom_multiplicative():
    for a in range(-12, 13):
        for m in range(1, 16):
            for n in range(1, 16):
                assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_top_multiplicative():
    for n in range(1, 30):
        for a in range(-9, 10):
            for b in range(-9, 10):
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@pytest.mark.parametrize("D", [-4, -3, 5, 8])
def test_kronecker_periodic_for_fundamental_discriminants(D):
    m = abs(D)
    for n in range(1, 3 * m + 1):
        assert kronecker(D, n) == kronecker(D, n + m)


def test_kronecker_edge_cases():
    assert kronecker(1, 0) == 1
    assert kronecker(-1, 0) == 1
    assert kronecker(2, 0) == 0
    for a in range(-8, 9):
        assert kronecker(a, 1) == 1
    # (a|2) by the a mod 8 rule
    for a in range(-20, 21):
        if a % 2 == 0:
            assert kronecker(a, 2) == 0
        elif a % 8 in (1, 7):
            assert kronecker(a, 2) == 1
        else:
            assert kronecker(a, 2) == -1
    for n in range(2, 12):
        assert kronecker(0, n) == 0


# -------------------------------------------------------------------- is_prime


@pytest.mark.parametrize("n", [2, 3, 5, 7, 97, 101, 7919, 104729, 2**31 - 1])
def test_is_prime_accepts_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [-7, -1, 0, 1, 4, 9, 561, 1105, 7917, 104730])
def test_is_prime_rejects_composites(n):
    # 561 and 1105 are Carmichael numbers
    assert not is_prime(n)


# ------------------------------------------------------------------ descriptors


def test_rational_field_kappa_is_one(Q):
    assert Q.degree == 1
    assert Q.discriminant == 1
    assert Q.kappa == 1.0


def test_gaussian_kappa(Qi):
    # 2 pi * h * R / (nu * sqrt|D|) with h=1, R=1, nu=4, D=-4
    assert Qi.kappa == pytest.approx(math.pi / 4.0, abs=1e-15)


def test_real_quadratic_kappa(fields):
    # kappa = 2^2 h R / (2 sqrt D); the catalog regulators are the logs of
    # the fundamental units (1+sqrt 2) and (1+sqrt 5)/2
    f2 = fields["Qsqrt2"]
    assert f2.regulator == pytest.approx(math.log(1.0 + math.sqrt(2.0)), abs=1e-15)
    assert f2.kappa == pytest.approx(2.0 * f2.regulator / math.sqrt(8.0), abs=1e-15)
    f5 = fields["Qsqrt5"]
    assert f5.regulator == pytest.approx(math.log((1.0 + math.sqrt(5.0)) / 2.0), abs=1e-15)
    assert f5.kappa == pytest.approx(2.0 * f5.regulator / math.sqrt(5.0), abs=1e-15)


def test_eisenstein_kappa(fields):
    f = fields["Qsqrt-3"]
    assert f.nu == 6
    assert f.kappa == pytest.approx(math.pi / (3.0 * math.sqrt(3.0)), abs=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(label="bad", degree=3, d=None, discriminant=1, r1=1, r2=1,
             class_number=1, regulator=1.0, nu=2),
        dict(label="bad", degree=2, d=-1, discriminant=-4, r1=2, r2=0,
             class_number=1, regulator=1.0, nu=4),
        dict(label="bad", degree=2, d=-1, discriminant=-8, r1=0, r2=1,
             class_number=1, regulator=1.0, nu=4),
        dict(label="bad", degree=2, d=-1, discriminant=-4, r1=0, r2=1,
             class_number=0, regulator=1.0, nu=4),
        dict(label="bad", degree=2, d=-1, discriminant=-4, r1=0, r2=1,
             class_number=1, regulator=2.0, nu=4),
        dict(label="bad", degree=2, d=-1, discriminant=-4, r1=0, r2=1,
             class_number=1, regulator=1.0, nu=8),
        dict(label="bad", degree=2, d=2, discriminant=8, r1=2, r2=0,
             class_number=1, regulator=-1.0, nu=2),
        dict(label="bad", degree=2, d=2, discriminant=8, r1=2, r2=0,
             class_number=1, regulator=0.88, nu=4),
        dict(label="bad", degree=1, d=None, discriminant=4, r1=1, r2=0,
             class_number=1, regulator=1.0, nu=2),
    ],
)
def test_descriptor_invariants_rejected(kwargs):
    with pytest.raises(InvalidFieldError):
        FieldDescriptor(**kwargs)


def test_quadratic_field_rejects_bad_d():
    for d in (0, 1, 4, 12):
        with pytest.raises(InvalidFieldError):
            quadratic_field("bad", d, 1, 1.0, 2)


def test_descriptor_value_equality():
    assert rational_field() == rational_field()
    a = quadratic_field("Qi", -1, 1, 1.0, 4)
    b = quadratic_field("Qi", -1, 1, 1.0, 4)
    assert a == b and hash(a) == hash(b)


# --------------------------------------------------------------------- splitting


@pytest.mark.parametrize(
    "p, kind, norms",
    [
        (2, SplitKind.RAMIFIED, (2,)),
        (3, SplitKind.INERT, (9,)),
        (5, SplitKind.SPLIT, (5, 5)),
        (7, SplitKind.INERT, (49,)),
        (13, SplitKind.SPLIT, (13, 13)),
    ],
)
def test_split_prime_gaussian(Qi, p, kind, norms):
    st = split_prime(Qi, p)
    assert st.kind is kind
    assert st.norms == norms


# classical residue rules, independent of the kronecker implementation
_SPLIT_RULES = {
    "Qi": (lambda p: p % 4 == 1, (2,)),
    "Qsqrt-3": (lambda p: p % 3 == 1, (3,)),
    "Qsqrt2": (lambda p: p % 8 in (1, 7), (2,)),
    "Qsqrt5": (lambda p: p % 5 in (1, 4), (5,)),
}


@pytest.mark.parametrize("label", sorted(_SPLIT_RULES))
def test_split_prime_residue_rules(fields, label):
    desc = fields[label]
    splits, ramified = _SPLIT_RULES[label]
    for p in sieve_primes(200):
        st = split_prime(desc, p)
        if p in ramified:
            assert st.kind is SplitKind.RAMIFIED and st.norms == (p,)
        elif splits(p):
            assert st.kind is SplitKind.SPLIT and st.norms == (p, p)
        else:
            assert st.kind is SplitKind.INERT and st.norms == (p * p,)


def test_split_prime_errors(Q, Qi):
    with pytest.raises(InvalidFieldError):
        split_prime(Q, 5)
    with pytest.raises(ValueError):
        split_prime(Qi, 6)
