# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simplex pivoting and complex Jacobi sweeps."""
import numpy as np

from libc.math cimport sqrt, INFINITY

cdef extern from "complex.h":
    double cabs(double complex)
    double complex conj(double complex)
    double creal(double complex)

cdef enum:
    OPTIMAL_C = 0
    UNBOUNDED_C = 1
    ITERATION_LIMIT_C = 2

OPTIMAL = OPTIMAL_C
UNBOUNDED = UNBOUNDED_C
ITERATION_LIMIT = ITERATION_LIMIT_C


cdef void _pivot(double[:, ::1] T, Py_ssize_t row, Py_ssize_t col) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t nr = T.shape[0], nc = T.shape[1]
    cdef double inv = 1.0 / T[row, col]
    cdef double f
    for j in range(nc):
        T[row, j] *= inv
    for i in range(nr):
        if i == row:
            continue
        f = T[i, col]
        if f == 0.0:
            continue
        for j in range(nc):
            T[i, j] -= f * T[row, j]
        T[i, col] = 0.0
    T[row, col] = 1.0


def pivot(double[:, ::1] T, Py_ssize_t row, Py_ssize_t col):
    _pivot(T, row, col)


def simplex_iterate(double[:, ::1] T, long[::1] basis, Py_ssize_t n_allowed,
                    double tol, Py_ssize_t max_iter):
    cdef Py_ssize_t m = T.shape[0] - 1
    cdef Py_ssize_t rhs = T.shape[1] - 1
    cdef Py_ssize_t it = 0, i, j, col, best_row
    cdef double ratio, best_ratio
    cdef int status = OPTIMAL_C
    with nogil:
        while True:
            col = -1
            for j in range(n_allowed):
                if T[m, j] < -tol:
                    col = j
                    break
            if col < 0:
                status = OPTIMAL_C
                break
            if it >= max_iter:
                status = ITERATION_LIMIT_C
                break
            best_row = -1
            best_ratio = INFINITY
            for i in range(m):
                if T[i, col] > tol:
                    ratio = T[i, rhs] / T[i, col]
                    if best_row < 0 or ratio < best_ratio - tol or (
                        ratio <= best_ratio + tol and basis[i] < basis[best_row]
                    ):
                        best_ratio = ratio
                        best_row = i
            if best_row < 0:
                status = UNBOUNDED_C
                break
            _pivot(T, best_row, col)
            basis[best_row] = col
            it += 1
    return status, it


def jacobi_eigh(A, double tol, int max_sweeps):
    cdef double complex[:, ::1] a = np.array(A, dtype=np.complex128, copy=True, order="C")
    cdef Py_ssize_t n = a.shape[0]
    V_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = V_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double scale = 0.0, off, r, aa, bb, tau, t, c, s
    cdef double complex e, ec, x, y
    for p in range(n):
        for q in range(n):
            scale += cabs(a[p, q]) ** 2
    scale = sqrt(scale)
    if scale == 0.0:
        return np.zeros(n), V_arr, 0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * cabs(a[p, q]) ** 2
        if sqrt(off) <= tol * scale:
            return np.array([creal(a[k, k]) for k in range(n)]), V_arr, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = cabs(a[p, q])
                if r == 0.0:
                    continue
                e = a[p, q] / r
                ec = conj(e)
                aa = creal(a[p, p])
                bb = creal(a[q, q])
                tau = (bb - aa) / (2.0 * r)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x - s * ec * y
                    a[k, q] = s * x + c * ec * y
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = c * x - s * e * y
                    a[q, k] = s * x + c * e * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = creal(a[p, p])
                a[q, q] = creal(a[q, q])
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = c * x - s * ec * y
                    v[k, q] = s * x + c * ec * y
    return np.array([creal(a[k, k]) for k in range(n)]), V_arr, -1
