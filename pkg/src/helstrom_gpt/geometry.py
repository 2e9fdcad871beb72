"""Vertex-represented polytope state spaces and the LP-backed predicates on them."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import lp
from .errors import TAU_GEOM, TAU_NUM, NumericalError, ValidationError


def as_point(x, dimension: int | None = None) -> np.ndarray:
    """Coerce ``x`` to a finite float vector, optionally of a given length."""
    p = np.asarray(x, dtype=float)
    if p.ndim != 1:
        raise ValidationError(f"a point must be a vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValidationError("point has non-finite coordinates")
    if dimension is not None and p.size != dimension:
        raise ValidationError(f"point has length {p.size}, expected {dimension}")
    return p


class Membership(NamedTuple):
    inside: bool
    weights: np.ndarray | None


def _hull_lp(vertices: np.ndarray, x: np.ndarray, tol: float) -> lp.LpSolution:
    m = vertices.shape[0]
    A_eq = np.vstack([vertices.T, np.ones((1, m))])
    b_eq = np.append(x, 1.0)
    return lp.solve(lp.LinearProgram(np.zeros(m), A_eq, b_eq), tol=tol)


class ConvexStateSpace:
    """Convex hull of a finite list of extreme points (the pure states).

    Vertices that are convex combinations of the others are rejected, not pruned.
    """

    def __init__(self, vertices, name: str | None = None):
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        if V.ndim != 2 or V.shape[0] < 1 or V.shape[1] < 1:
            raise ValidationError("a state space needs at least one vertex of length >= 1")
        if not np.all(np.isfinite(V)):
            raise ValidationError("vertices have non-finite coordinates")
        m = V.shape[0]
        for i in range(m):
            for j in range(i + 1, m):
                if np.linalg.norm(V[i] - V[j]) <= TAU_GEOM:
                    raise ValidationError(f"vertices {i} and {j} coincide")
        if m > 2:
            for i in range(m):
                others = np.delete(V, i, axis=0)
                if _hull_lp(others, V[i], TAU_NUM).optimal:
                    raise ValidationError(
                        f"vertex {i} {V[i].tolist()} is not extreme")
        V.setflags(write=False)
        self._vertices = V
        self.name = name

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def dimension(self) -> int:
        return self._vertices.shape[1]

    def __len__(self):
        return self._vertices.shape[0]

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"ConvexStateSpace({label}{len(self)} vertices in R^{self.dimension})"

    def point(self, x) -> np.ndarray:
        return as_point(x, self.dimension)

    def contains(self, x, tol: float = TAU_NUM) -> Membership:
        return contains(self, x, tol)

    def require(self, x, what: str = "point") -> np.ndarray:
        """Return ``x`` as a point, raising ValidationError if it lies outside."""
        p = self.point(x)
        if not contains(self, p).inside:
            raise ValidationError(f"{what} {p.tolist()} is outside the state space")
        return p


def contains(space: ConvexStateSpace, x, tol: float = TAU_NUM) -> Membership:
    """LP membership test; on success also returns one set of convex weights."""
    p = space.point(x)
    sol = _hull_lp(space.vertices, p, tol)
    if not sol.optimal:
        return Membership(False, None)
    w = np.clip(sol.x, 0.0, None)
    return Membership(True, w / w.sum())


def ray_to_boundary(space: ConvexStateSpace, origin, through) -> tuple[np.ndarray, float]:
    """Follow the ray from ``origin`` through ``through`` to the boundary.

    Returns ``(u, mu)`` with ``u = origin + mu * (through - origin)`` and ``mu``
    the largest such factor keeping ``u`` in the space (``mu >= 1``).
    """
    o = space.point(origin)
    t = space.point(through)
    direction = t - o
    if np.linalg.norm(direction) <= TAU_GEOM:
        raise ValidationError("ray origin and through-point coincide")
    if not contains(space, o).inside:
        raise ValidationError(f"ray origin {o.tolist()} is outside the state space")
    if not contains(space, t).inside:
        raise ValidationError(f"ray point {t.tolist()} is outside the state space")
    m = len(space)
    # variables: convex weights (m), then mu
    A_eq = np.zeros((space.dimension + 1, m + 1))
    A_eq[:-1, :m] = space.vertices.T
    A_eq[:-1, m] = -direction
    A_eq[-1, :m] = 1.0
    b_eq = np.append(o, 1.0)
    c = np.zeros(m + 1)
    c[m] = 1.0
    sol = lp.solve(lp.LinearProgram(c, A_eq, b_eq))
    if sol.status == lp.UNBOUNDED:
        raise NumericalError("unbounded ray in a compact polytope")
    if not sol.optimal:
        raise NumericalError(f"ray LP failed: {sol.status}")
    mu = float(sol.objective_value)
    if mu < 1.0 - TAU_GEOM:
        raise NumericalError(f"ray LP returned mu={mu} < 1")
    return o + mu * direction, max(mu, 1.0)


def interpolation_ratio(endpoint_a, interior, endpoint_b) -> float:
    """Return ``q`` in [0, 1] with ``interior = q * a + (1 - q) * b``."""
    a = as_point(endpoint_a)
    x = as_point(interior, a.size)
    b = as_point(endpoint_b, a.size)
    seg = a - b
    norm2 = float(seg @ seg)
    if norm2 <= TAU_GEOM**2:
        raise ValidationError("degenerate segment: endpoints coincide")
    q = float((x - b) @ seg) / norm2
    residual = np.linalg.norm(x - (q * a + (1.0 - q) * b))
    if residual > TAU_GEOM:
        raise ValidationError(f"point is off the segment (residual {residual:.3g})")
    if q < -TAU_GEOM or q > 1.0 + TAU_GEOM:
        raise ValidationError(f"point lies outside the segment (q = {q:.6g})")
    return min(max(q, 0.0), 1.0)


def affine_basis(points) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis of the affine hull of ``points``.

    Returns ``(origin, basis)`` where ``basis`` has one row per hull direction.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    origin = P.mean(axis=0)
    _, s, vt = np.linalg.svd(P - origin)
    rank = int(np.sum(s > TAU_GEOM * max(1.0, s[0] if s.size else 1.0)))
    return origin, vt[:rank]
