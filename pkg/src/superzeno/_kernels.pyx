# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: truncated series and pulsed products for small matrices."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef void _flip_rows(double complex[:, :, ::1] c, Py_ssize_t nk, Py_ssize_t dim_p, Py_ssize_t dim) noexcept nogil:
    cdef Py_ssize_t k, i, l
    for k in range(nk):
        for i in range(dim_p):
            for l in range(dim):
                c[k, i, l] = -c[k, i, l]


def sequence_series(x, hpow, Py_ssize_t dim_p):
    cdef double[::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef double complex[:, :, ::1] hp = np.ascontiguousarray(hpow, dtype=np.complex128)
    cdef Py_ssize_t nk = hp.shape[0]
    cdef Py_ssize_t dim = hp.shape[1]
    cdef Py_ssize_t n = xs.shape[0]
    out = np.zeros((nk, dim, dim), dtype=np.complex128)
    tmp = np.zeros((nk, dim, dim), dtype=np.complex128)
    sc = np.zeros((nk, dim, dim), dtype=np.complex128)
    cdef double complex[:, :, ::1] c = out
    cdef double complex[:, :, ::1] t = tmp
    cdef double complex[:, :, ::1] s = sc
    cdef Py_ssize_t j, k, a, i, l, r
    cdef double xp
    cdef double complex acc
    with nogil:
        for i in range(dim):
            c[0, i, i] = 1.0
        for j in range(n):
            xp = 1.0
            for a in range(nk):
                for i in range(dim):
                    for l in range(dim):
                        s[a, i, l] = hp[a, i, l] * xp
                xp = xp * xs[j]
            for k in range(nk):
                for i in range(dim):
                    for l in range(dim):
                        acc = 0.0
                        for a in range(k + 1):
                            for r in range(dim):
                                acc = acc + s[a, i, r] * c[k - a, r, l]
                        t[k, i, l] = acc
            for k in range(nk):
                for i in range(dim):
                    for l in range(dim):
                        c[k, i, l] = t[k, i, l]
            if j < n - 1:
                _flip_rows(c, nk, dim_p, dim)
    return out


def pulsed_product(props, index, Py_ssize_t dim_p):
    cdef double complex[:, :, ::1] p = np.ascontiguousarray(props, dtype=np.complex128)
    cdef long[::1] idx = np.ascontiguousarray(index, dtype=np.int_)
    cdef Py_ssize_t dim = p.shape[1]
    cdef Py_ssize_t n = idx.shape[0]
    out = np.eye(dim, dtype=np.complex128).reshape(1, dim, dim)
    tmp = np.empty((dim, dim), dtype=np.complex128)
    cdef double complex[:, :, ::1] c = out
    cdef double complex[:, ::1] t = tmp
    cdef Py_ssize_t j, i, l, r, q
    cdef double complex acc
    with nogil:
        for j in range(n):
            q = idx[j]
            for i in range(dim):
                for l in range(dim):
                    acc = 0.0
                    for r in range(dim):
                        acc = acc + p[q, i, r] * c[0, r, l]
                    t[i, l] = acc
            for i in range(dim):
                for l in range(dim):
                    c[0, i, l] = t[i, l]
            if j < n - 1:
                _flip_rows(c, 1, dim_p, dim)
    return out[0]
