"""Dense two-phase simplex solver.

Every geometric predicate and every discrimination bound in this package is a
small LP (tens of variables), so a dense tableau with Bland's rule is enough and
keeps basic solutions exact at polytope vertices.

Problems are stated as maximizations::

    maximize  c @ x
    s.t.      A_eq @ x == b_eq
              A_ub @ x <= b_ub
              x >= lb            (lb entries may be -inf)
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import TAU_NUM, NumericalError, ValidationError

PIVOT_TOL = 1e-11

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _matrix(a, n, name):
    if a is None:
        return np.zeros((0, n))
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0:
        return np.zeros((0, n))
    if a.shape[1] != n:
        raise ValidationError(f"{name} has {a.shape[1]} columns, expected {n}")
    return a


def _vector(b, m, name):
    b = np.zeros(0) if b is None else np.atleast_1d(np.asarray(b, dtype=float))
    if b.shape != (m,):
        raise ValidationError(f"{name} has shape {b.shape}, expected ({m},)")
    return b


@dataclass(frozen=True)
class LinearProgram:
    c: np.ndarray
    A_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    A_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    lb: np.ndarray | float | None = 0.0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        if c.ndim != 1:
            raise ValidationError("objective must be a vector")
        n = c.size
        A_eq = _matrix(self.A_eq, n, "A_eq")
        b_eq = _vector(self.b_eq, A_eq.shape[0], "b_eq")
        A_ub = _matrix(self.A_ub, n, "A_ub")
        b_ub = _vector(self.b_ub, A_ub.shape[0], "b_ub")
        lb = np.zeros(n) if self.lb is None else np.broadcast_to(
            np.asarray(self.lb, dtype=float), (n,)).copy()
        for name, arr in (("c", c), ("A_eq", A_eq), ("b_eq", b_eq),
                          ("A_ub", A_ub), ("b_ub", b_ub)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} has non-finite entries")
        if np.any(np.isnan(lb)) or np.any(lb == np.inf):
            raise ValidationError("lb entries must be finite or -inf")
        for name, arr in (("c", c), ("A_eq", A_eq), ("b_eq", b_eq),
                          ("A_ub", A_ub), ("b_ub", b_ub), ("lb", lb)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return self.c.size


@dataclass(frozen=True)
class LpSolution:
    status: str
    x: np.ndarray | None = None
    objective_value: float | None = None
    iterations: int = 0
    backend: str = field(default=_kernels.BACKEND, repr=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _run(T, basis, n_allowed, cap, kernels):
    status, it = kernels.simplex_iterate(T, basis, n_allowed, PIVOT_TOL, cap)
    if status == _kernels.ITERATION_LIMIT:
        raise NumericalError(f"simplex iteration cap {cap} exceeded")
    return status, it


def solve(lp: LinearProgram, tol: float = TAU_NUM, kernels=_kernels) -> LpSolution:
    """Solve ``lp`` with the two-phase simplex method and Bland's rule.

    ``kernels`` selects the pivoting backend (a module exposing ``pivot`` and
    ``simplex_iterate``); the import-time default is the compiled one if built.
    """
    n = lp.n
    free = np.isneginf(lp.lb)
    shift = np.where(free, 0.0, lp.lb)
    # x = M @ y + shift with y >= 0; free variables split into y+ - y-
    ny = n + int(free.sum())
    M = np.zeros((n, ny))
    k = n
    for j in range(n):
        M[j, j] = 1.0
        if free[j]:
            M[j, k] = -1.0
            k += 1

    me, mu = lp.A_eq.shape[0], lp.A_ub.shape[0]
    m = me + mu
    N = ny + mu
    A = np.zeros((m, N))
    A[:me, :ny] = lp.A_eq @ M
    A[me:, :ny] = lp.A_ub @ M
    A[me:, ny:] = np.eye(mu)
    b = np.concatenate([lp.b_eq - lp.A_eq @ shift, lp.b_ub - lp.A_ub @ shift])
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    cost = np.concatenate([-(lp.c @ M), np.zeros(mu)])
    cap = 50 * (m + N)

    # phase 1: minimize the sum of artificials
    T = np.zeros((m + 1, N + m + 1))
    T[:m, :N] = A
    T[:m, N:N + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :N] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = np.arange(N, N + m, dtype=np.int64)
    _, it1 = _run(T, basis, N + m, cap, kernels)
    if -T[m, -1] > tol:
        return LpSolution(INFEASIBLE, iterations=it1)

    keep = []
    for i in range(m):
        if basis[i] >= N:
            row = np.abs(T[i, :N])
            j = int(np.argmax(row)) if N else -1
            if j < 0 or row[j] <= PIVOT_TOL:
                continue  # redundant constraint
            kernels.pivot(T, i, j)
            basis[i] = j
        keep.append(i)

    m2 = len(keep)
    T2 = np.zeros((m2 + 1, N + 1))
    T2[:m2, :N] = T[keep, :N]
    T2[:m2, -1] = T[keep, -1]
    basis2 = np.ascontiguousarray(basis[keep], dtype=np.int64)
    cb = cost[basis2]
    T2[m2, :N] = cost - cb @ T2[:m2, :N]
    T2[m2, -1] = -(cb @ T2[:m2, -1])
    status, it2 = _run(T2, basis2, N, cap, kernels)
    if status == _kernels.UNBOUNDED:
        return LpSolution(UNBOUNDED, iterations=it1 + it2)

    y = np.zeros(N)
    y[basis2] = T2[:m2, -1]
    x = M @ y[:ny] + shift
    eq_res = np.max(np.abs(lp.A_eq @ x - lp.b_eq), initial=0.0)
    ub_res = np.max(lp.A_ub @ x - lp.b_ub, initial=0.0)
    lb_res = np.max(np.where(free, 0.0, lp.lb - x), initial=0.0)
    if max(eq_res, ub_res, lb_res) > tol:
        raise NumericalError(
            f"simplex residuals too large: eq {eq_res:.3g}, ub {ub_res:.3g}, lb {lb_res:.3g}")
    return LpSolution(OPTIMAL, x, float(lp.c @ x), it1 + it2)


def maximize(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, lb=0.0, tol=TAU_NUM):
    """Shorthand for ``solve(LinearProgram(...))``."""
    return solve(LinearProgram(c, A_eq, b_eq, A_ub, b_ub, lb), tol=tol)
