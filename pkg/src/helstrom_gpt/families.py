"""Weak Helstrom families of ensembles: construction, weakening, certification.

A weak family for states ``s_i`` with priors ``p_i`` is a set of weights
``tilde_p_i`` and conjugate states ``t_i`` such that every mixture
``tilde_p_i * s_i + (1 - tilde_p_i) * t_i`` is the same reference state and the
ratio ``p_i / tilde_p_i`` is one common number ``p <= 1``. That ratio bounds
the optimal success probability from above; an observable annihilating every
conjugate attains it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .discrimination import (DiscriminationInstance, Observable,
                             distinguishable, success_probability)
from .errors import TAU_GEOM, TAU_NUM, ValidationError
from .geometry import contains, ray_to_boundary


@dataclass(frozen=True, eq=False)
class WeakHelstromFamily:
    instance: DiscriminationInstance
    tilde_p: np.ndarray
    conjugates: np.ndarray
    reference: np.ndarray
    ratio: float

    def __post_init__(self):
        n, d = self.instance.n, self.instance.space.dimension
        tp = np.asarray(self.tilde_p, dtype=float)
        T = np.atleast_2d(np.asarray(self.conjugates, dtype=float))
        s = np.asarray(self.reference, dtype=float)
        if tp.shape != (n,) or T.shape != (n, d) or s.shape != (d,):
            raise ValidationError(
                f"family shapes {tp.shape}, {T.shape}, {s.shape} do not match "
                f"{n} states in R^{d}")
        for arr in (tp, T, s):
            arr.setflags(write=False)
        object.__setattr__(self, "tilde_p", tp)
        object.__setattr__(self, "conjugates", T)
        object.__setattr__(self, "reference", s)
        object.__setattr__(self, "ratio", float(self.ratio))

    @property
    def n(self) -> int:
        return self.instance.n

    def mixtures(self) -> np.ndarray:
        tp = self.tilde_p[:, None]
        return tp * self.instance.states + (1.0 - tp) * self.conjugates


@dataclass(frozen=True)
class FamilyReport:
    ratio_residual: float
    mixture_residual: float
    ratio_at_most_one: bool
    weights_in_range: bool
    conjugates_inside: tuple
    reference_inside: bool

    @property
    def passed(self) -> bool:
        return (self.ratio_residual <= TAU_NUM and self.mixture_residual <= TAU_GEOM
                and self.ratio_at_most_one and self.weights_in_range
                and all(self.conjugates_inside) and self.reference_inside)

    def __bool__(self):
        return self.passed


def validate(fam: WeakHelstromFamily) -> FamilyReport:
    """Residuals of the common-ratio and common-mixture conditions, plus membership."""
    space = fam.instance.space
    tp = fam.tilde_p
    in_range = bool(np.all(tp > 0) and np.all(tp <= 1.0 + TAU_NUM))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = fam.instance.priors / tp
    ratio_res = float(np.max(np.abs(ratios - fam.ratio))) if in_range else float("inf")
    mix_res = float(np.max(np.linalg.norm(fam.mixtures() - fam.reference, axis=1)))
    return FamilyReport(
        ratio_residual=ratio_res,
        mixture_residual=mix_res,
        ratio_at_most_one=fam.ratio <= 1.0 + TAU_NUM,
        weights_in_range=in_range,
        conjugates_inside=tuple(contains(space, t).inside for t in fam.conjugates),
        reference_inside=contains(space, fam.reference).inside,
    )


def trivial_family(inst: DiscriminationInstance) -> WeakHelstromFamily:
    """Ratio-1 family: ``t_i`` is the prior-weighted average of the other states."""
    p = inst.priors
    S = inst.states
    reference = p @ S
    T = (reference[None, :] - p[:, None] * S) / (1.0 - p)[:, None]
    return WeakHelstromFamily(inst, p.copy(), T, reference, 1.0)


def weaken(fam: WeakHelstromFamily, target_ratio: float) -> WeakHelstromFamily:
    """Same reference state, larger Helstrom ratio ``target_ratio``."""
    target_ratio = float(target_ratio)
    if not fam.ratio < target_ratio <= 1.0:
        raise ValidationError(
            f"target ratio must satisfy {fam.ratio:.12g} < target <= 1, got {target_ratio}")
    p = fam.instance.priors
    new_tp = p / target_ratio
    if np.any(new_tp >= 1.0):
        raise ValidationError("weakened weights reach 1; conjugates undefined")
    kappa = (1.0 - fam.tilde_p) / (1.0 - new_tp)
    T = kappa[:, None] * fam.conjugates + (1.0 - kappa)[:, None] * fam.instance.states
    return WeakHelstromFamily(fam.instance, new_tp, T, fam.reference.copy(), target_ratio)


def geometric_family(inst: DiscriminationInstance, reference=None) -> WeakHelstromFamily:
    """Family from rays ``s_i -> reference`` extended to the boundary.

    ``reference`` defaults to the prior-weighted mean state. The index with the
    largest ``p_i / q_i`` (lowest index on ties) fixes the ratio.
    """
    space = inst.space
    p = inst.priors
    S = inst.states
    if reference is None:
        s = p @ S
    else:
        s = space.require(reference, "reference")
    for i, si in enumerate(S):
        if np.linalg.norm(si - s) <= TAU_GEOM:
            raise ValidationError(f"reference coincides with states[{i}]")
    U = np.empty_like(S)
    q = np.empty(inst.n)
    for i, si in enumerate(S):
        U[i], mu = ray_to_boundary(space, si, s)
        q[i] = 1.0 - 1.0 / mu
    with np.errstate(divide="ignore"):
        scores = np.where(q > 0, p / np.where(q > 0, q, 1.0), np.inf)
    i0 = int(np.argmax(scores))
    ratio = float(scores[i0])
    if ratio > 1.0 + TAU_NUM:
        raise ValidationError(
            f"reference {s.tolist()} gives Helstrom ratio {ratio:.6g} > 1 "
            f"(state {i0}: prior {p[i0]:.6g}, segment ratio {q[i0]:.6g})")
    tp = p * q[i0] / p[i0]
    T = np.empty_like(S)
    for i in range(inst.n):
        if tp[i] >= 1.0:
            T[i] = s
        else:
            T[i] = ((q[i] - tp[i]) * S[i] + (1.0 - q[i]) * U[i]) / (1.0 - tp[i])
    return WeakHelstromFamily(inst, tp, T, s, ratio)


class RatioBound(NamedTuple):
    passed: bool
    success: float
    slack: float
    identity_residual: float


def ratio_bound_check(fam: WeakHelstromFamily, obs: Observable) -> RatioBound:
    """Check ``P_S(E) <= p`` through ``1 = P_S(E)/p + sum_i (1 - tilde_p_i) e_i(t_i)``."""
    if len(obs) != fam.n:
        raise ValidationError(f"observable has {len(obs)} outcomes for {fam.n} states")
    ps = success_probability(fam.instance, obs)
    slack = float(sum((1.0 - w) * e(t) for w, e, t in zip(fam.tilde_p, obs, fam.conjugates)))
    resid = abs(1.0 - ps / fam.ratio - slack)
    passed = ps <= fam.ratio + TAU_NUM and slack >= -TAU_NUM and resid <= TAU_NUM
    return RatioBound(bool(passed), ps, slack, resid)


class Certificate(NamedTuple):
    certified: bool
    conjugate_values: np.ndarray
    success: float


def certify_optimal(fam: WeakHelstromFamily, obs: Observable) -> Certificate:
    """Sufficient optimality test: every effect vanishes on its conjugate state.

    Outcomes with ``tilde_p_i = 1`` carry no conjugate constraint and are skipped.
    When certified, the family ratio is the optimal success probability and
    ``obs`` is an optimal measurement.
    """
    ps = success_probability(fam.instance, obs)
    vals = np.array([e(t) for e, t in zip(obs, fam.conjugates)])
    active = fam.tilde_p < 1.0
    ok = bool(np.all(vals[active] <= TAU_NUM))
    return Certificate(ok, vals, ps)


def binary_certify_by_distinguishability(
        fam: WeakHelstromFamily) -> tuple[bool, Observable | None]:
    """Two-state certificate: conjugates admitting an effect with values 1 and 0.

    The returned observable ``(u - e, e)`` has ``e_1(t_1) = e_2(t_2) = 0``.
    """
    if fam.n != 2:
        raise ValidationError(f"distinguishability certificate needs 2 states, got {fam.n}")
    ok, e = distinguishable(fam.instance.space, fam.conjugates[0], fam.conjugates[1])
    if not ok:
        return False, None
    obs = Observable([e.complement(), e])
    return bool(certify_optimal(fam, obs).certified), obs
