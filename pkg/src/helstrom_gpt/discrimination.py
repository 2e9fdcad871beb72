"""Effects, observables and the minimum-error discrimination LP over a polytope."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import lp
from .errors import TAU_GEOM, TAU_NUM, NumericalError, ValidationError
from .geometry import ConvexStateSpace, as_point, contains


@dataclass(frozen=True)
class Effect:
    """Affine functional ``x -> linear @ x + offset``."""

    linear: np.ndarray
    offset: float

    def __post_init__(self):
        a = as_point(self.linear)
        a.setflags(write=False)
        object.__setattr__(self, "linear", a)
        object.__setattr__(self, "offset", float(self.offset))

    def __call__(self, x) -> float:
        return float(self.linear @ np.asarray(x, dtype=float) + self.offset)

    @classmethod
    def unit(cls, dimension: int) -> "Effect":
        return cls(np.zeros(dimension), 1.0)

    @classmethod
    def zero(cls, dimension: int) -> "Effect":
        return cls(np.zeros(dimension), 0.0)

    def complement(self) -> "Effect":
        """``u - e``."""
        return Effect(-self.linear, 1.0 - self.offset)

    def vertex_values(self, space: ConvexStateSpace) -> np.ndarray:
        return space.vertices @ self.linear + self.offset

    def is_valid_on(self, space: ConvexStateSpace, tol: float = TAU_NUM) -> bool:
        if self.linear.size != space.dimension:
            return False
        vals = self.vertex_values(space)
        return bool(np.all(vals >= -tol) and np.all(vals <= 1.0 + tol))


class Observable(tuple):
    """An N-outcome measurement: effects summing to the unit effect."""

    def __new__(cls, effects: Sequence[Effect]):
        effects = tuple(effects)
        if not effects:
            raise ValidationError("an observable needs at least one effect")
        d = effects[0].linear.size
        if any(e.linear.size != d for e in effects):
            raise ValidationError("effects of an observable must share a dimension")
        return super().__new__(cls, effects)

    @property
    def dimension(self) -> int:
        return self[0].linear.size

    def unit_residual(self) -> float:
        lin = np.sum([e.linear for e in self], axis=0)
        off = sum(e.offset for e in self)
        return float(max(np.max(np.abs(lin)), abs(off - 1.0)))

    def check(self, space: ConvexStateSpace, tol: float = TAU_NUM) -> None:
        """Raise ValidationError unless every effect is valid on ``space`` and they sum to u."""
        if self.dimension != space.dimension:
            raise ValidationError(
                f"observable acts on R^{self.dimension}, space is R^{space.dimension}")
        for i, e in enumerate(self):
            if not e.is_valid_on(space, tol):
                vals = e.vertex_values(space)
                raise ValidationError(
                    f"effect {i} leaves [0, 1] on the state space "
                    f"(vertex values in [{vals.min():.3g}, {vals.max():.3g}])")
        res = self.unit_residual()
        if res > tol:
            raise ValidationError(f"effects do not sum to the unit effect (residual {res:.3g})")

    @classmethod
    def trivial(cls, n: int, dimension: int, guess: int = 0) -> "Observable":
        """Always answer ``guess``."""
        return cls([Effect.unit(dimension) if i == guess else Effect.zero(dimension)
                    for i in range(n)])


class DiscriminationInstance:
    """States ``s_i`` of a polytope space with prior probabilities ``p_i``."""

    def __init__(self, space: ConvexStateSpace, states, priors):
        self.space = space
        states = [space.point(s) for s in states]
        priors = np.asarray(priors, dtype=float)
        if len(states) < 2:
            raise ValidationError("states: need at least two states to discriminate")
        if priors.shape != (len(states),):
            raise ValidationError(
                f"priors: expected {len(states)} entries, got {priors.size}")
        if not np.all(np.isfinite(priors)) or np.any(priors <= 0) or np.any(priors >= 1):
            raise ValidationError("priors: every prior must lie strictly between 0 and 1")
        if abs(priors.sum() - 1.0) > TAU_NUM:
            raise ValidationError(f"priors: must sum to 1, got {priors.sum():.12g}")
        for i, s in enumerate(states):
            if not contains(space, s).inside:
                raise ValidationError(f"states[{i}] {s.tolist()} is outside the state space")
        for i in range(len(states)):
            for j in range(i + 1, len(states)):
                if np.linalg.norm(states[i] - states[j]) <= TAU_GEOM:
                    raise ValidationError(f"states[{i}] and states[{j}] coincide")
        S = np.array(states)
        S.setflags(write=False)
        priors.setflags(write=False)
        self.states = S
        self.priors = priors

    @property
    def n(self) -> int:
        return len(self.priors)

    def __repr__(self):
        return f"DiscriminationInstance(n={self.n}, space={self.space!r})"

    def permuted(self, order) -> "DiscriminationInstance":
        order = list(order)
        return DiscriminationInstance(self.space, self.states[order], self.priors[order])


class HelstromBound(NamedTuple):
    value: float
    observable: Observable


def success_probability(inst: DiscriminationInstance, obs: Observable,
                        tol: float = TAU_NUM) -> float:
    """Probability of guessing right when outcome ``i`` means "state ``s_i``"."""
    if len(obs) != inst.n:
        raise ValidationError(f"observable has {len(obs)} outcomes for {inst.n} states")
    obs.check(inst.space, tol)
    return float(sum(p * e(s) for p, e, s in zip(inst.priors, obs, inst.states)))


def discrimination_lp(inst: DiscriminationInstance) -> lp.LinearProgram:
    """LP over per-outcome affine effects ``e_i(x) = a_i.x + b_i``.

    Variables are ``(a_1, b_1, ..., a_N, b_N)``, all free; constraints keep each
    effect nonnegative on every vertex and make the effects sum to the unit effect.
    """
    V = inst.space.vertices
    m, d = V.shape
    N = inst.n
    k = d + 1
    c = np.zeros(N * k)
    A_ub = np.zeros((N * m, N * k))
    A_eq = np.zeros((d + 1, N * k))
    for i in range(N):
        blk = slice(i * k, (i + 1) * k)
        c[blk] = inst.priors[i] * np.append(inst.states[i], 1.0)
        A_ub[i * m:(i + 1) * m, blk] = -np.hstack([V, np.ones((m, 1))])
        A_eq[:, blk] = np.eye(k)
    b_eq = np.zeros(d + 1)
    b_eq[d] = 1.0
    return lp.LinearProgram(c, A_eq, b_eq, A_ub, np.zeros(N * m), lb=-np.inf)


def helstrom_bound_lp(inst: DiscriminationInstance) -> HelstromBound:
    """Optimal success probability over all N-outcome observables, with a maximizer."""
    d = inst.space.dimension
    k = d + 1
    sol = lp.solve(discrimination_lp(inst))
    if not sol.optimal:
        raise NumericalError(f"discrimination LP ended {sol.status}")
    obs = Observable([Effect(sol.x[i * k:i * k + d], sol.x[i * k + d]) for i in range(inst.n)])
    return HelstromBound(float(sol.objective_value), obs)


def _single_effect_lp(space: ConvexStateSpace, c, A_eq=None, b_eq=None) -> lp.LpSolution:
    V = space.vertices
    m, d = V.shape
    Vh = np.hstack([V, np.ones((m, 1))])
    return lp.solve(lp.LinearProgram(c, A_eq, b_eq, np.vstack([Vh, -Vh]),
                                     np.concatenate([np.ones(m), np.zeros(m)]), lb=-np.inf))


def binary_bound_form(inst: DiscriminationInstance) -> float:
    """Two-state bound as ``p2 + max_e [p1 e(s1) - p2 e(s2)]`` over single effects."""
    if inst.n != 2:
        raise ValidationError(f"binary form needs exactly 2 states, got {inst.n}")
    p1, p2 = inst.priors
    s1, s2 = inst.states
    c = p1 * np.append(s1, 1.0) - p2 * np.append(s2, 1.0)
    sol = _single_effect_lp(inst.space, c)
    if not sol.optimal:
        raise NumericalError(f"binary-form LP ended {sol.status}")
    return float(p2 + sol.objective_value)


def distinguishable(space: ConvexStateSpace, t1, t2) -> tuple[bool, Effect | None]:
    """Is there an effect equal to 1 at ``t1`` and 0 at ``t2``?

    Feasible exactly when the two states carry parallel supporting hyperplanes.
    """
    t1 = space.require(t1, "t1")
    t2 = space.require(t2, "t2")
    d = space.dimension
    A_eq = np.vstack([np.append(t1, 1.0), np.append(t2, 1.0)])
    sol = _single_effect_lp(space, np.zeros(d + 1), A_eq, [1.0, 0.0])
    if not sol.optimal:
        return False, None
    return True, Effect(sol.x[:d], sol.x[d])
