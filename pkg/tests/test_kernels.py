from __future__ import annotations

import math

import numpy as np
import pytest

from idealstats import _kernels_py as pyk
from idealstats import kernels
from idealstats.ideals import enumerate_ideals, omega, omega_up_to
from idealstats.primeideals import prime_ideal_table

cyk = pytest.importorskip("idealstats._kernels_cy")


def test_backend_selected():
    assert pyk.BACKEND == "python"
    assert cyk.BACKEND == "cython"
    assert kernels.BACKEND in ("python", "cython")


def test_subset_codes():
    assert kernels.subset_code("all") == 0
    assert kernels.subset_code("hfree") == 1
    assert kernels.subset_code("hfull") == 2
    with pytest.raises(ValueError):
        kernels.subset_code("squarefull")


# --------------------------------------------------- compiled == pure python

# (label, subset code, h, x, table limit)
_MATRIX = [
    ("Q", 0, 0, 5000, 5000),
    ("Q", 1, 2, 5000, 5000),
    ("Q", 1, 3, 5000, 5000),
    ("Q", 2, 2, 10**6, 1000),
    ("Q", 2, 3, 10**6, 100),
    ("Qi", 0, 0, 4000, 4000),
    ("Qi", 1, 2, 4000, 4000),
    ("Qi", 2, 2, 10**6, 1000),
    ("Qsqrt5", 1, 2, 4000, 4000),
    ("Qsqrt-3", 2, 3, 10**6, 100),
]


@pytest.mark.parametrize("label, subset, h, x, limit", _MATRIX)
def test_backends_agree(fields, label, subset, h, x, limit):
    """The compiled kernels must reproduce the pure walk bit for bit."""
    norms = prime_ideal_table(fields[label], limit).norm

    assert pyk.count(norms, x, subset, h) == cyk.count(norms, x, subset, h)

    z_py = pyk.ek_z(norms, x, subset, h)
    z_cy = cyk.ek_z(norms, x, subset, h)
    assert np.array_equal(z_py, z_cy)

    tracked = np.arange(min(5, len(norms)), dtype=np.int64)
    m_py, h_py = pyk.mask_hist(norms, x, subset, h, tracked)
    m_cy, h_cy = cyk.mask_hist(norms, x, subset, h, tracked)
    assert m_py == m_cy
    assert np.array_equal(h_py, h_cy)

    lo, athresh = 10, 50
    n_py, c_py, a_py = pyk.large_factor_stats(norms, x, subset, h, lo, athresh)
    n_cy, c_cy, a_cy = cyk.large_factor_stats(norms, x, subset, h, lo, athresh)
    assert (n_py, a_py) == (n_cy, a_cy)
    assert np.array_equal(c_py, c_cy)

    s_py = pyk.centered_omega_y_moments(norms, x, subset, h, 30.0, 1.25, 0.75, 4)
    s_cy = cyk.centered_omega_y_moments(norms, x, subset, h, 30.0, 1.25, 0.75, 4)
    assert s_py[0] == s_cy[0]
    assert np.array_equal(s_py[1], s_cy[1])


# ------------------------------------------------------ object-walk oracles


def _norms(desc, limit):
    return prime_ideal_table(desc, limit).norm


@pytest.mark.parametrize("impl", [pyk, cyk], ids=["python", "cython"])
def test_count_matches_object_walk(Qi, impl):
    x = 1500
    norms = _norms(Qi, x)
    ideals = list(enumerate_ideals(Qi, x))
    assert impl.count(norms, x, 0, 0) == len(ideals)
    for h in (2, 3):
        free = sum(1 for f in ideals if all(e < h for _, e in f.factors))
        full = sum(1 for f in ideals if all(e >= h for _, e in f.factors))
        assert impl.count(norms, x, 1, h) == free
        assert impl.count(norms, x, 2, h) == full


@pytest.mark.parametrize("impl", [pyk, cyk], ids=["python", "cython"])
def test_ek_z_matches_object_walk(Qi, impl):
    x = 800
    norms = _norms(Qi, x)
    z = impl.ek_z(norms, x, 0, 0)
    expected = []
    for f in enumerate_ideals(Qi, x):
        if f.norm >= 3:
            ll = math.log(math.log(f.norm))
            expected.append((omega(f) - ll) / math.sqrt(ll))
    assert len(z) == len(expected)
    assert np.allclose(np.sort(z), np.sort(np.array(expected)), rtol=0, atol=1e-13)


def _row_map(desc, x):
    """prime ideal -> table row, built once per test."""
    table = prime_ideal_table(desc, int(x))
    return {table.ideal(i): i for i in range(len(table))}


@pytest.mark.parametrize("impl", [pyk, cyk], ids=["python", "cython"])
def test_mask_hist_matches_object_walk(Qi, impl):
    x, h = 1200, 2
    norms = _norms(Qi, x)
    tracked = np.array([0, 1, 3], dtype=np.int64)
    members, hist = impl.mask_hist(norms, x, 1, h, tracked)
    rows = _row_map(Qi, x)
    tracked_set = {int(i): bit for bit, i in enumerate(tracked)}
    counts: dict[int, int] = {}
    total = 0
    for f in enumerate_ideals(Qi, x):
        if any(e >= h for _, e in f.factors):
            continue
        total += 1
        key = 0
        for prime, _ in f.factors:
            bit = tracked_set.get(rows[prime])
            if bit is not None:
                key |= 1 << bit
        counts[key] = counts.get(key, 0) + 1
    assert members == total == int(hist.sum())
    for key in range(8):
        assert hist[key] == counts.get(key, 0)


@pytest.mark.parametrize("impl", [pyk, cyk], ids=["python", "cython"])
def test_large_factor_stats_matches_object_walk(Qi, impl):
    x, h, lo, athresh = 1200, 2, 8, 40
    norms = _norms(Qi, x)
    members, cnt, max_above = impl.large_factor_stats(norms, x, 1, h, lo, athresh)
    rows = _row_map(Qi, x)
    expected_cnt = np.zeros(len(norms), dtype=np.int64)
    expected_max = 0
    total = 0
    for f in enumerate_ideals(Qi, x):
        if any(e >= h for _, e in f.factors):
            continue
        total += 1
        above = 0
        for prime, _ in f.factors:
            if prime.norm > lo:
                expected_cnt[rows[prime]] += 1
            if prime.norm > athresh:
                above += 1
        expected_max = max(expected_max, above)
    assert members == total
    assert max_above == expected_max
    assert np.array_equal(cnt, expected_cnt)


@pytest.mark.parametrize("impl", [pyk, cyk], ids=["python", "cython"])
def test_centered_moments_match_object_walk(Q, impl):
    x, h, y = 2000, 2, 12.0
    mu, sigma = 1.1, 0.9
    norms = _norms(Q, x)
    members, sums = impl.centered_omega_y_moments(norms, x, 1, h, y, mu, sigma, 3)
    expected = [0.0, 0.0, 0.0]
    total = 0
    for f in enumerate_ideals(Q, x):
        if any(e >= h for _, e in f.factors):
            continue
        total += 1
        t = (omega_up_to(f, y) - mu) / sigma
        for r in range(3):
            expected[r] += t ** (r + 1)
    assert members == total
    assert np.allclose(sums, expected, rtol=1e-12, atol=1e-9)


# ---------------------------------------------------------------- validation


@pytest.mark.parametrize("impl", [pyk, cyk], ids=["python", "cython"])
def test_kernel_validation(Q, impl):
    norms = _norms(Q, 50)
    with pytest.raises(ValueError):
        impl.count(norms, 0, 0, 0)
    with pytest.raises(ValueError):
        impl.count(norms, 50, 3, 2)
    with pytest.raises(ValueError):
        impl.count(norms, 50, 1, 1)  # h-free needs h >= 2
    with pytest.raises(ValueError):
        impl.mask_hist(norms, 50, 0, 0, np.arange(9, dtype=np.int64))
    with pytest.raises(ValueError):
        impl.mask_hist(norms, 50, 0, 0, np.array([0, 0], dtype=np.int64))
    with pytest.raises(ValueError):
        impl.mask_hist(norms, 50, 0, 0, np.array([99], dtype=np.int64))
    with pytest.raises(ValueError):
        impl.centered_omega_y_moments(norms, 50, 0, 0, 10.0, 0.0, 1.0, 0)
    with pytest.raises(ValueError):
        impl.centered_omega_y_moments(norms, 50, 0, 0, 10.0, 0.0, -1.0, 2)


def test_unit_ideal_always_counted(Q):
    empty = np.array([], dtype=np.int64)
    for subset, h in ((0, 0), (1, 2), (2, 2)):
        assert pyk.count(empty, 1, subset, h) == 1
        assert cyk.count(empty, 1, subset, h) == 1
