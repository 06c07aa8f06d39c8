# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled streaming passes over the k-vector dictionary.

Column ``k * half**m + c`` of the dictionary is the k-vector whose canonical
coset labels are the base-``half`` digits of ``c`` looked up in ``lo[k]``;
its ``2**m`` rows pick ``lo[k, d]`` or ``hi[k, d] = rank(lo[k, d] * k)`` per
factor.  Row subsets are ordered with the first factor as the most
significant bit, matching ``itertools.product((lo, hi), ...)``.
"""
import numpy as np

from libc.stdint cimport int64_t

DEF MAX_M = 24


cdef inline void _column_rows(const int64_t[:, ::1] lo, const int64_t[:, ::1] hi, Py_ssize_t k,
                              int m, const int64_t* digits, const int64_t* pw,
                              int64_t* rows) noexcept nogil:
    cdef Py_ssize_t count = 1, i, j
    cdef int64_t a, b
    rows[0] = 0
    for i in range(m):
        a = lo[k, digits[i]] * pw[i]
        b = hi[k, digits[i]] * pw[i]
        j = count - 1
        while j >= 0:
            rows[2 * j + 1] = rows[j] + b
            rows[2 * j] = rows[j] + a
            j -= 1
        count *= 2


cdef inline void _advance(int64_t* digits, int m, int64_t half) noexcept nogil:
    cdef int i = m - 1
    while i >= 0:
        digits[i] += 1
        if digits[i] < half:
            return
        digits[i] = 0
        i -= 1


cdef int _setup(int m, int64_t radix, int64_t* pw) except -1:
    cdef int i
    if m < 1 or m > MAX_M:
        raise ValueError(f"m must be in 1..{MAX_M}")
    pw[m - 1] = 1
    for i in range(m - 2, -1, -1):
        pw[i] = pw[i + 1] * radix
    return 0


def dictionary_matvec(const int64_t[:, ::1] lo, const int64_t[:, ::1] hi, int m, int64_t radix,
                      double scale, const double[::1] x, double[::1] out):
    """``out += scale * B01 @ x`` where B01 is the 0/1 dictionary."""
    cdef int64_t pw[MAX_M]
    cdef int64_t digits[MAX_M]
    cdef int64_t rows[1 << 12]
    cdef Py_ssize_t nswaps = lo.shape[0], half = lo.shape[1]
    cdef Py_ssize_t per_swap, k, c, s, nsub
    cdef double v
    _setup(m, radix, pw)
    if m > 12:
        raise ValueError("m > 12 not supported by the compiled kernel")
    nsub = 1 << m
    per_swap = half ** m
    if x.shape[0] != nswaps * per_swap:
        raise ValueError("coefficient vector has the wrong length")
    with nogil:
        for k in range(nswaps):
            for s in range(m):
                digits[s] = 0
            for c in range(per_swap):
                v = x[k * per_swap + c]
                if v != 0.0:
                    v = v * scale
                    _column_rows(lo, hi, k, m, digits, pw, rows)
                    for s in range(nsub):
                        out[rows[s]] += v
                _advance(digits, m, half)


def dictionary_rmatvec(const int64_t[:, ::1] lo, const int64_t[:, ::1] hi, int m, int64_t radix,
                       double scale, const double[::1] y, double[::1] out):
    """``out = scale * B01.T @ y``."""
    cdef int64_t pw[MAX_M]
    cdef int64_t digits[MAX_M]
    cdef int64_t rows[1 << 12]
    cdef Py_ssize_t nswaps = lo.shape[0], half = lo.shape[1]
    cdef Py_ssize_t per_swap, k, c, s, nsub
    cdef double acc
    _setup(m, radix, pw)
    if m > 12:
        raise ValueError("m > 12 not supported by the compiled kernel")
    nsub = 1 << m
    per_swap = half ** m
    if out.shape[0] != nswaps * per_swap:
        raise ValueError("output vector has the wrong length")
    with nogil:
        for k in range(nswaps):
            for s in range(m):
                digits[s] = 0
            for c in range(per_swap):
                _column_rows(lo, hi, k, m, digits, pw, rows)
                acc = 0.0
                for s in range(nsub):
                    acc += y[rows[s]]
                out[k * per_swap + c] = scale * acc
                _advance(digits, m, half)


def dictionary_rows(const int64_t[:, ::1] lo, const int64_t[:, ::1] hi, int m, int64_t radix):
    """Row indices of every column, shape ``(columns, 2**m)``."""
    cdef int64_t pw[MAX_M]
    cdef int64_t digits[MAX_M]
    cdef Py_ssize_t nswaps = lo.shape[0], half = lo.shape[1]
    cdef Py_ssize_t per_swap, k, c, s
    _setup(m, radix, pw)
    per_swap = half ** m
    result = np.empty((nswaps * per_swap, 1 << m), dtype=np.int64)
    cdef int64_t[:, ::1] view = result
    with nogil:
        for k in range(nswaps):
            for s in range(m):
                digits[s] = 0
            for c in range(per_swap):
                _column_rows(lo, hi, k, m, digits, pw, &view[k * per_swap + c, 0])
                _advance(digits, m, half)
    return result
