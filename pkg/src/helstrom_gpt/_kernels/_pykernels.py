"""Pure-Python/numpy versions of the numerical kernels.

Same signatures and semantics as the compiled ``_ckernels`` module; used when
the extension is not built.
"""
import math

import numpy as np

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2


def pivot(T, row, col):
    """Gauss-Jordan pivot of tableau ``T`` (in place) on ``T[row, col]``."""
    T[row, :] /= T[row, col]
    prow = T[row, :]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, prow)
    T[:, col] = 0.0
    T[row, col] = 1.0


def simplex_iterate(T, basis, n_allowed, tol, max_iter):
    """Run primal simplex iterations with Bland's rule on a minimization tableau.

    ``T`` has the constraint rows first and the reduced-cost row last; the
    right-hand side is the last column. Only columns ``< n_allowed`` may enter.
    Returns ``(status, iterations)``.
    """
    m = T.shape[0] - 1
    it = 0
    while True:
        cost = T[m, :n_allowed]
        candidates = np.flatnonzero(cost < -tol)
        if candidates.size == 0:
            return OPTIMAL, it
        if it >= max_iter:
            return ITERATION_LIMIT, it
        col = int(candidates[0])
        column = T[:m, col]
        rhs = T[:m, -1]
        best_row = -1
        best_ratio = math.inf
        for i in np.flatnonzero(column > tol):
            ratio = rhs[i] / column[i]
            if best_row < 0 or ratio < best_ratio - tol or (
                ratio <= best_ratio + tol and basis[i] < basis[best_row]
            ):
                best_ratio = ratio
                best_row = int(i)
        if best_row < 0:
            return UNBOUNDED, it
        pivot(T, best_row, col)
        basis[best_row] = col
        it += 1


def jacobi_eigh(A, tol, max_sweeps):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)``, unsorted; ``sweeps`` is
    ``-1`` when the off-diagonal mass did not drop below ``tol * ||A||_F``.
    """
    A = np.array(A, dtype=np.complex128, copy=True)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(n), V, 0
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(np.abs(np.triu(A, 1)) ** 2)))
        if off <= tol * scale:
            return np.real(np.diag(A)).copy(), V, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(A[p, q])
                if r == 0.0:
                    continue
                e = A[p, q] / r
                a = A[p, p].real
                b = A[q, q].real
                tau = (b - a) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ec = e.conjugate()
                colp = A[:, p].copy()
                colq = A[:, q]
                A[:, p] = c * colp - s * ec * colq
                A[:, q] = s * colp + c * ec * colq
                rowp = A[p, :].copy()
                rowq = A[q, :]
                A[p, :] = c * rowp - s * e * rowq
                A[q, :] = s * rowp + c * e * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * ec * vq
                V[:, q] = s * vp + c * ec * vq
    return np.real(np.diag(A)).copy(), V, -1
