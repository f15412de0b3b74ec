# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled depth-first enumeration kernels.

Mirrors _kernels_py exactly (same traversal order, same arithmetic); the
backend-equality tests compare the two implementations output for output.
"""

import numpy as np

from libc.math cimport log, sqrt

BACKEND = "cython"

ctypedef long long i64

cdef i64 _NO_MAX = 1 << 30


cdef inline int _exp_range(int subset, int h, i64 *emin, i64 *emax) except -1:
    if subset == 0:
        emin[0] = 1
        emax[0] = _NO_MAX
    elif subset == 1:
        if h < 2:
            raise ValueError("h-free requires h >= 2")
        emin[0] = 1
        emax[0] = h - 1
    elif subset == 2:
        if h < 2:
            raise ValueError("h-full requires h >= 2")
        emin[0] = h
        emax[0] = _NO_MAX
    else:
        raise ValueError(f"unknown subset code {subset}")
    return 0


cdef i64[::1] _as_i64(object norms):
    return np.ascontiguousarray(norms, dtype=np.int64)


cdef i64 _count_rec(const i64 *nr, Py_ssize_t n, Py_ssize_t start, i64 rem,
                    i64 emin, i64 emax) noexcept nogil:
    cdef i64 total = 1
    cdef Py_ssize_t j
    cdef i64 N, q, k, e
    for j in range(start, n):
        N = nr[j]
        q = rem
        k = emin
        while k and N <= q:
            q //= N
            k -= 1
        if k:
            break
        e = emin
        while True:
            total += _count_rec(nr, n, j + 1, q, emin, emax)
            if e == emax or N > q:
                break
            q //= N
            e += 1
    return total


def count(object norms, object x, int subset, int h):
    """Number of subset members with norm <= x."""
    cdef i64[::1] nr = _as_i64(norms)
    cdef i64 emin, emax
    cdef i64 xv = int(x)
    if xv < 1:
        raise ValueError("x must be >= 1")
    _exp_range(subset, h, &emin, &emax)
    cdef i64 out
    with nogil:
        out = _count_rec(&nr[0] if nr.shape[0] else NULL, nr.shape[0], 0, xv,
                         emin, emax)
    return int(out)


cdef void _ekz_rec(const i64 *nr, Py_ssize_t n, Py_ssize_t start, i64 rem,
                   i64 nv, i64 om, i64 emin, i64 emax,
                   double *out, Py_ssize_t *pos) noexcept nogil:
    cdef Py_ssize_t j
    cdef i64 N, q, m, k, e
    cdef double ll
    if nv >= 3:
        ll = log(log(<double> nv))
        out[pos[0]] = (om - ll) / sqrt(ll)
        pos[0] += 1
    for j in range(start, n):
        N = nr[j]
        q = rem
        m = 1
        k = emin
        while k and N <= q:
            q //= N
            m *= N
            k -= 1
        if k:
            break
        e = emin
        while True:
            _ekz_rec(nr, n, j + 1, q, nv * m, om + 1, emin, emax, out, pos)
            if e == emax or N > q:
                break
            q //= N
            m *= N
            e += 1


def ek_z(object norms, object x, int subset, int h):
    """Normalized prime-factor counts, one per member of norm >= 3."""
    cdef i64[::1] nr = _as_i64(norms)
    cdef i64 emin, emax
    cdef i64 xv = int(x)
    if xv < 1:
        raise ValueError("x must be >= 1")
    _exp_range(subset, h, &emin, &emax)
    cdef i64 total
    with nogil:
        total = _count_rec(&nr[0] if nr.shape[0] else NULL, nr.shape[0], 0, xv,
                           emin, emax)
    buf = np.empty(total, dtype=np.float64)
    cdef double[::1] out = buf
    cdef Py_ssize_t pos = 0
    with nogil:
        _ekz_rec(&nr[0] if nr.shape[0] else NULL, nr.shape[0], 0, xv, 1, 0,
                 emin, emax, &out[0] if total else NULL, &pos)
    return buf[:pos].copy()


cdef i64 _mask_rec(const i64 *nr, const unsigned char *tbit, Py_ssize_t n,
                   Py_ssize_t start, i64 rem, int mask, i64 emin, i64 emax,
                   i64 *hist) noexcept nogil:
    cdef i64 total = 1
    cdef Py_ssize_t j
    cdef i64 N, q, k, e
    cdef int child
    hist[mask] += 1
    for j in range(start, n):
        N = nr[j]
        q = rem
        k = emin
        while k and N <= q:
            q //= N
            k -= 1
        if k:
            break
        child = mask | tbit[j]
        e = emin
        while True:
            total += _mask_rec(nr, tbit, n, j + 1, q, child, emin, emax, hist)
            if e == emax or N > q:
                break
            q //= N
            e += 1
    return total


def mask_hist(object norms, object x, int subset, int h, object tracked):
    """Histogram of members over divisibility patterns of <= 8 tracked primes."""
    cdef i64[::1] nr = _as_i64(norms)
    cdef i64 emin, emax
    cdef i64 xv = int(x)
    if xv < 1:
        raise ValueError("x must be >= 1")
    _exp_range(subset, h, &emin, &emax)
    tr = np.asarray(tracked, dtype=np.int64)
    if tr.shape[0] > 8:
        raise ValueError("at most 8 tracked primes")
    tbit_arr = np.zeros(max(nr.shape[0], 1), dtype=np.uint8)
    cdef unsigned char[::1] tbit = tbit_arr
    cdef Py_ssize_t i, j
    for i in range(tr.shape[0]):
        j = tr[i]
        if not 0 <= j < nr.shape[0]:
            raise ValueError(f"tracked index {j} out of range")
        if tbit[j]:
            raise ValueError("tracked indices must be distinct")
        tbit[j] = 1 << i
    hist_arr = np.zeros(256, dtype=np.int64)
    cdef i64[::1] hist = hist_arr
    cdef i64 members
    with nogil:
        members = _mask_rec(&nr[0] if nr.shape[0] else NULL, &tbit[0],
                            nr.shape[0], 0, xv, 0, emin, emax, &hist[0])
    return int(members), hist_arr


cdef i64 _large_rec(const i64 *nr, Py_ssize_t n, Py_ssize_t start, i64 rem,
                    i64 lo, i64 athresh, i64 emin, i64 emax,
                    i64 *cnt, Py_ssize_t *stack, int depth,
                    i64 *max_above) noexcept nogil:
    cdef i64 total = 1
    cdef Py_ssize_t j
    cdef i64 N, q, k, e, above
    cdef int s
    above = 0
    for s in range(depth):
        if nr[stack[s]] > lo:
            cnt[stack[s]] += 1
        if nr[stack[s]] > athresh:
            above += 1
    if above > max_above[0]:
        max_above[0] = above
    for j in range(start, n):
        N = nr[j]
        q = rem
        k = emin
        while k and N <= q:
            q //= N
            k -= 1
        if k:
            break
        stack[depth] = j
        e = emin
        while True:
            total += _large_rec(nr, n, j + 1, q, lo, athresh, emin, emax,
                                cnt, stack, depth + 1, max_above)
            if e == emax or N > q:
                break
            q //= N
            e += 1
    return total


def large_factor_stats(object norms, object x, int subset, int h, object lo,
                       object athresh):
    """Per-prime divisor counts above norm lo, plus max factor count above athresh."""
    cdef i64[::1] nr = _as_i64(norms)
    cdef i64 emin, emax
    cdef i64 xv = int(x)
    if xv < 1:
        raise ValueError("x must be >= 1")
    _exp_range(subset, h, &emin, &emax)
    cnt_arr = np.zeros(max(nr.shape[0], 1), dtype=np.int64)
    cdef i64[::1] cnt = cnt_arr
    cdef Py_ssize_t stack[128]
    cdef i64 max_above = 0
    cdef i64 lov = int(lo)
    cdef i64 av = int(athresh)
    cdef i64 members
    with nogil:
        members = _large_rec(&nr[0] if nr.shape[0] else NULL, nr.shape[0], 0,
                             xv, lov, av, emin, emax, &cnt[0], stack, 0,
                             &max_above)
    return int(members), cnt_arr[: nr.shape[0]], int(max_above)


cdef i64 _moment_rec(const i64 *nr, Py_ssize_t n, Py_ssize_t start, i64 rem,
                     i64 oy, double y, double mu, double sigma, int rmax,
                     i64 emin, i64 emax, double *sums) noexcept nogil:
    cdef i64 total = 1
    cdef Py_ssize_t j
    cdef i64 N, q, k, e, oy_child
    cdef double t, p
    cdef int r
    t = (oy - mu) / sigma
    p = 1.0
    for r in range(rmax):
        p *= t
        sums[r] += p
    for j in range(start, n):
        N = nr[j]
        q = rem
        k = emin
        while k and N <= q:
            q //= N
            k -= 1
        if k:
            break
        oy_child = oy + 1 if N <= y else oy
        e = emin
        while True:
            total += _moment_rec(nr, n, j + 1, q, oy_child, y, mu, sigma,
                                 rmax, emin, emax, sums)
            if e == emax or N > q:
                break
            q //= N
            e += 1
    return total


def centered_omega_y_moments(object norms, object x, int subset, int h,
                             double y, double mu, double sigma, int rmax):
    """Empirical moments of (omega_y - mu)/sigma over subset members."""
    cdef i64[::1] nr = _as_i64(norms)
    cdef i64 emin, emax
    cdef i64 xv = int(x)
    if xv < 1:
        raise ValueError("x must be >= 1")
    _exp_range(subset, h, &emin, &emax)
    if not 1 <= rmax <= 8:
        raise ValueError("rmax must be in 1..8")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    sums_arr = np.zeros(8, dtype=np.float64)
    cdef double[::1] sums = sums_arr
    cdef i64 members
    with nogil:
        members = _moment_rec(&nr[0] if nr.shape[0] else NULL, nr.shape[0], 0,
                              xv, 0, y, mu, sigma, rmax, emin, emax, &sums[0])
    return int(members), sums_arr[:rmax].copy()
