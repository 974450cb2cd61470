# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native fraction-free elimination on int64 matrices.

Callers must guarantee that every minor of the input fits in a signed
64-bit integer (see ``kernels.fits_native``).  Products of two minors are
formed in 128-bit arithmetic, so the exact Bareiss division never overflows.
"""
import numpy as np

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline long long _update(long long aij, long long akk, long long aik,
                              long long akj, long long prev) nogil:
    cdef int128 num = <int128>aij * akk - <int128>aik * akj
    return <long long>(num / prev)


def bareiss_det(long long[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, p
    cdef long long prev = 1, tmp
    cdef int sign = 1
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    with nogil:
        for k in range(n - 1):
            if a[k, k] == 0:
                p = k + 1
                while p < n and a[p, k] == 0:
                    p += 1
                if p == n:
                    sign = 0
                    break
                for j in range(n):
                    tmp = a[k, j]
                    a[k, j] = a[p, j]
                    a[p, j] = tmp
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i, j] = _update(a[i, j], a[k, k], a[i, k], a[k, j], prev)
                a[i, k] = 0
            prev = a[k, k]
    if sign == 0:
        return 0
    return sign * a[n - 1, n - 1]


def bareiss_rank(long long[:, ::1] a):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef long long prev = 1, tmp
    with nogil:
        for c in range(cols):
            if r == rows:
                break
            p = r
            while p < rows and a[p, c] == 0:
                p += 1
            if p == rows:
                continue
            if p != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[p, j]
                    a[p, j] = tmp
            for i in range(r + 1, rows):
                for j in range(c + 1, cols):
                    a[i, j] = _update(a[i, j], a[r, c], a[i, c], a[r, j], prev)
                a[i, c] = 0
            prev = a[r, c]
            r += 1
    return r
