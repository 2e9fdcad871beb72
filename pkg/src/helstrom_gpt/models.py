"""Concrete state spaces: the classical probability simplex and the unit square."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discrimination import (DiscriminationInstance, Effect, Observable,
                             helstrom_bound_lp)
from .errors import TAU_NUM, NumericalError, ValidationError
from .families import (WeakHelstromFamily, binary_certify_by_distinguishability,
                       certify_optimal)
from .geometry import ConvexStateSpace

SQUARE_VERTICES = ((0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0))
#: band on |dx| - |dy| inside which the two square cases coincide
SQUARE_CASE_BAND = 1e-12


def classical_space(d: int) -> ConvexStateSpace:
    """Probability simplex on ``d`` outcomes, embedded in R^d."""
    if int(d) != d or d < 2:
        raise ValidationError(f"a classical space needs d >= 2 outcomes, got {d}")
    return ConvexStateSpace(np.eye(int(d)), name=f"classical-{int(d)}")


def square_space() -> ConvexStateSpace:
    return ConvexStateSpace(SQUARE_VERTICES, name="square")


def is_classical(space: ConvexStateSpace) -> bool:
    V = space.vertices
    return V.shape[0] == V.shape[1] and np.array_equal(V, np.eye(V.shape[0]))


def classical_state(probs, d: int | None = None) -> np.ndarray:
    s = np.asarray(probs, dtype=float)
    if s.ndim != 1 or (d is not None and s.size != d):
        raise ValidationError(f"classical state must be a length-{d} vector")
    if not np.all(np.isfinite(s)) or np.any(s < -TAU_NUM) or abs(s.sum() - 1.0) > TAU_NUM:
        raise ValidationError(f"not a probability vector: {s.tolist()}")
    return s


def classical_map_oracle(inst: DiscriminationInstance) -> float:
    """Maximum-a-posteriori success ``sum_k max_i p_i s_i[k]``."""
    if not is_classical(inst.space):
        raise ValidationError("MAP oracle needs a classical simplex space")
    return float(np.sum(np.max(inst.priors[:, None] * inst.states, axis=0)))


@dataclass(frozen=True)
class FamilyResult:
    success: float
    family: WeakHelstromFamily
    observable: Observable | None
    certified: bool
    generic: bool = True


def classical_binary_family(s1, s2, p1: float, p2: float) -> FamilyResult:
    """Helstrom family for two classical distributions from the signed difference.

    ``X = p1*s1 - p2*s2``; the conjugates are the normalized negative and
    positive parts of ``X`` (disjoint supports, hence distinguishable).
    """
    s1 = classical_state(s1)
    s2 = classical_state(s2, s1.size)
    inst = DiscriminationInstance(classical_space(s1.size), [s1, s2], [p1, p2])
    p1, p2 = inst.priors
    X = p1 * s1 - p2 * s2
    Xp = np.maximum(X, 0.0)
    Xm = -np.minimum(X, 0.0)
    norm_p, norm_m = Xp.sum(), Xm.sum()
    generic = norm_p > 1e-12 and norm_m > 1e-12
    if generic:
        success = 0.5 * (1.0 + np.abs(X).sum())
    else:
        success = p1 if norm_m <= 1e-12 else p2
    tp = np.array([p1, p2]) / success
    if tp[0] < 1.0:
        reference = (p1 * s1 + Xm) / success
    else:
        reference = s1.copy()
    t1 = Xm / norm_m if tp[0] < 1.0 else reference
    t2 = Xp / norm_p if tp[1] < 1.0 else reference
    fam = WeakHelstromFamily(inst, tp, np.array([t1, t2]), reference, success)
    if generic:
        certified, obs = binary_certify_by_distinguishability(fam)
    else:
        obs = Observable.trivial(2, s1.size, guess=0 if norm_m <= 1e-12 else 1)
        certified = bool(certify_optimal(fam, obs).certified)
    return FamilyResult(float(success), fam, obs, certified, generic)


def square_binary(s1, s2, priors=(0.5, 0.5)) -> FamilyResult:
    """Uniform-prior two-state discrimination on the square.

    Conjugates sit on the pair of opposite facets the difference direction
    crosses (x = 0/1 when |dx| >= |dy|, else y = 0/1), centred on the facet
    midline, with ``t1 - t2`` parallel to ``s1 - s2``.
    """
    priors = np.asarray(priors, dtype=float)
    if priors.shape != (2,) or np.max(np.abs(priors - 0.5)) > TAU_NUM:
        raise ValidationError("priors: square_binary needs uniform priors; "
                              "use helstrom_bound_lp for general priors")
    space = square_space()
    inst = DiscriminationInstance(space, [s1, s2], priors)
    s1, s2 = inst.states
    delta = s1 - s2
    # case (a): conjugates on x-facets; case (b): on y-facets
    axis = 0 if abs(delta[0]) - abs(delta[1]) >= -SQUARE_CASE_BAND else 1
    span = abs(delta[axis])
    q = 1.0 / (1.0 + span)
    # t1 - t2 = -(s1 - s2)/span, so the axis coordinates of t1, t2 are 0 and 1
    step = -delta / span
    mid = np.full(2, 0.5)
    t1 = mid + 0.5 * step
    t2 = mid - 0.5 * step
    reference = q * s1 + (1 - q) * t1
    success = 0.5 * (1.0 + span)
    fam = WeakHelstromFamily(inst, np.full(2, q), np.array([t1, t2]), reference, 1 / (2 * q))
    certified, obs = binary_certify_by_distinguishability(fam)
    if not certified:
        raise NumericalError("square conjugates failed the distinguishability certificate")
    return FamilyResult(float(success), fam, obs, certified)


def square_pure_observable() -> Observable:
    """The four-outcome observable vanishing on each antipodal vertex."""
    return Observable([
        Effect([-0.25, -0.25], 0.5),   # (2 - x - y)/4
        Effect([-0.25, 0.25], 0.25),   # (1 - x + y)/4
        Effect([0.25, -0.25], 0.25),   # (1 + x - y)/4
        Effect([0.25, 0.25], 0.0),     # (x + y)/4
    ])


def square_pure_state_discrimination() -> FamilyResult:
    """All four pure states of the square, uniform priors: success 1/2."""
    space = square_space()
    V = space.vertices
    inst = DiscriminationInstance(space, V, np.full(4, 0.25))
    # conjugate of s^(ij) is s^(i xor 1, j xor 1): the opposite corner
    T = 1.0 - V
    q = 0.5
    fam = WeakHelstromFamily(inst, np.full(4, q), T, np.array([0.5, 0.5]), 1 / (4 * q))
    obs = square_pure_observable()
    cert = certify_optimal(fam, obs)
    return FamilyResult(fam.ratio, fam, obs, cert.certified)


def classical_embed_quantum(s) -> np.ndarray:
    return np.diag(classical_state(s)).astype(complex)


def lp_cross_check(result: FamilyResult, tol: float = 1e-8) -> float:
    """Difference between a closed-form success value and the discrimination LP."""
    diff = abs(helstrom_bound_lp(result.family.instance).value - result.success)
    if diff > tol:
        raise NumericalError(f"closed form {result.success} disagrees with LP by {diff:.3g}")
    return diff
