"""Finite-dimensional quantum backend.

Density matrices are complex numpy arrays. Spectral work goes through the
cyclic Jacobi eigensolver in ``_kernels`` rather than LAPACK so the binary
construction below is self-contained and checkable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .discrimination import DiscriminationInstance, Effect, Observable
from .errors import TAU_GEOM, TAU_NUM, NumericalError, ValidationError
from .families import WeakHelstromFamily
from .geometry import ConvexStateSpace

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)
I2 = np.eye(2, dtype=complex)

JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 100
#: below this trace norm a positive/negative part counts as absent
ZERO_PART = 1e-12


def hermitian(A, tol: float = TAU_NUM) -> np.ndarray:
    """Return ``A`` as a complex square array, raising unless it is Hermitian."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValidationError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix has non-finite entries")
    res = np.max(np.abs(A - A.conj().T))
    if res > tol:
        raise ValidationError(f"matrix is not Hermitian (residual {res:.3g})")
    return A


def eig_hermitian(A, kernels=_kernels) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and unitary eigenvector columns of a Hermitian matrix."""
    A = hermitian(A)
    A = 0.5 * (A + A.conj().T)
    w, V, sweeps = kernels.jacobi_eigh(np.ascontiguousarray(A), JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise NumericalError(f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def positive_negative_parts(X) -> tuple[np.ndarray, np.ndarray]:
    """``X = X_plus - X_minus`` with orthogonal PSD parts; zero eigenvalues go to ``X_plus``."""
    w, V = eig_hermitian(X)
    pos = w >= 0
    Xp = (V[:, pos] * w[pos]) @ V[:, pos].conj().T
    Xm = (V[:, ~pos] * -w[~pos]) @ V[:, ~pos].conj().T
    return Xp, Xm


def trace_norm(A) -> float:
    w, _ = eig_hermitian(A)
    return float(np.sum(np.abs(w)))


def density_matrix(rho, tol: float = TAU_NUM) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, no eigenvalue below ``-tol``."""
    rho = hermitian(rho, tol)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"density matrix has trace {tr:.12g}")
    w, _ = eig_hermitian(rho)
    if w[-1] < -tol:
        raise ValidationError(f"density matrix has eigenvalue {w[-1]:.3g} < 0")
    return rho


def check_povm(elements, tol: float = TAU_NUM) -> list[np.ndarray]:
    elements = [hermitian(E, tol) for E in elements]
    d = elements[0].shape[0]
    for i, E in enumerate(elements):
        if E.shape != (d, d):
            raise ValidationError(f"POVM element {i} has shape {E.shape}")
        if eig_hermitian(E)[0][-1] < -tol:
            raise ValidationError(f"POVM element {i} is not positive semidefinite")
    res = np.max(np.abs(sum(elements) - np.eye(d)))
    if res > tol:
        raise ValidationError(f"POVM elements do not sum to identity (residual {res:.3g})")
    return elements


def expectation(E, rho) -> float:
    return float(np.trace(np.asarray(E) @ np.asarray(rho)).real)


# -- binary discrimination -------------------------------------------------


@dataclass(frozen=True)
class QuantumBinaryResult:
    """Optimal two-state discrimination and the Helstrom family attaining it.

    In the non-generic case one part of ``p1*rho1 - p2*rho2`` vanishes, the
    best strategy is to always guess the likelier state, and the conjugate of
    that state is left equal to the reference.
    """

    success: float
    success_alt: float
    generic: bool
    tilde_p: np.ndarray
    conjugates: tuple
    reference: np.ndarray
    ratio: float
    projector: np.ndarray
    mixture_residual: float


def quantum_binary_helstrom(rho1, rho2, p1: float, p2: float) -> QuantumBinaryResult:
    rho1 = density_matrix(rho1)
    rho2 = density_matrix(rho2)
    if rho1.shape != rho2.shape:
        raise ValidationError("density matrices have different dimensions")
    if np.max(np.abs(rho1 - rho2)) <= TAU_GEOM:
        raise ValidationError("states coincide")
    if not (0 < p1 < 1 and 0 < p2 < 1) or abs(p1 + p2 - 1.0) > TAU_NUM:
        raise ValidationError(f"priors must lie in (0, 1) and sum to 1, got ({p1}, {p2})")

    X = p1 * rho1 - p2 * rho2
    w, V = eig_hermitian(X)
    pos = w >= 0
    Xp = (V[:, pos] * w[pos]) @ V[:, pos].conj().T
    Xm = (V[:, ~pos] * -w[~pos]) @ V[:, ~pos].conj().T
    norm_p = float(np.sum(w[pos]))
    norm_m = float(-np.sum(w[~pos]))
    projector = V[:, pos] @ V[:, pos].conj().T

    generic = norm_p > ZERO_PART and norm_m > ZERO_PART
    if generic:
        success, success_alt = p2 + norm_p, p1 + norm_m
    elif norm_m <= ZERO_PART:
        success = success_alt = p1
    else:
        success = success_alt = p2
    if abs(success - success_alt) > TAU_NUM:
        raise NumericalError(f"p2 + |X+| = {success:.15g} but p1 + |X-| = {success_alt:.15g}")

    tp = np.array([p1, p2]) / success
    reference = (p1 * rho1 + Xm) / success if tp[0] < 1.0 else rho1.copy()
    sigma1 = Xm / norm_m if tp[0] < 1.0 else reference
    sigma2 = Xp / norm_p if tp[1] < 1.0 else reference
    mix1 = tp[0] * rho1 + (1 - tp[0]) * sigma1
    mix2 = tp[1] * rho2 + (1 - tp[1]) * sigma2
    mix_res = float(max(np.max(np.abs(mix1 - reference)), np.max(np.abs(mix2 - reference))))
    if mix_res > TAU_NUM:
        raise NumericalError(f"family mixtures disagree (residual {mix_res:.3g})")
    achieved = p1 * expectation(projector, rho1) + p2 * (1 - expectation(projector, rho2))
    if abs(achieved - success) > TAU_NUM:
        raise NumericalError(f"projector achieves {achieved:.15g}, expected {success:.15g}")
    return QuantumBinaryResult(success, success_alt, generic, tp, (sigma1, sigma2),
                               reference, success, projector, mix_res)


# -- qubits -----------------------------------------------------------------


def bloch_to_density(b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.shape != (3,) or not np.all(np.isfinite(b)):
        raise ValidationError(f"a Bloch vector has 3 finite entries, got {b!r}")
    if np.linalg.norm(b) > 1.0 + TAU_NUM:
        raise ValidationError(f"Bloch vector has norm {np.linalg.norm(b):.12g} > 1")
    return 0.5 * (I2 + np.tensordot(b, PAULI, axes=1))


def density_to_bloch(rho) -> np.ndarray:
    rho = hermitian(rho)
    if rho.shape != (2, 2):
        raise ValidationError(f"Bloch vectors exist only for qubits, got dimension {rho.shape[0]}")
    return np.array([np.trace(rho @ s).real for s in PAULI])


def ket_density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class QubitFamily:
    q: float
    ratio: float
    conjugates: np.ndarray  # Bloch vectors, one row per state
    reference: np.ndarray  # Bloch vector
    density_residual: float


def qubit_geometric_family(b1, b2) -> QubitFamily:
    """Uniform-prior qubit family with antipodal pure conjugates along ``b1 - b2``."""
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    rho1, rho2 = bloch_to_density(b1), bloch_to_density(b2)
    delta = b1 - b2
    dist = float(np.linalg.norm(delta))
    if dist <= TAU_GEOM:
        raise ValidationError("Bloch vectors coincide")
    unit = delta / dist
    C = np.array([-unit, unit])
    q = 2.0 / (2.0 + dist)
    reference = q * b1 + (1 - q) * C[0]
    ref_rho = q * rho1 + (1 - q) * bloch_to_density(C[0])
    other = q * rho2 + (1 - q) * bloch_to_density(C[1])
    res = float(np.max(np.abs(ref_rho - other)))
    if res > TAU_NUM:
        raise NumericalError(f"qubit family mixtures disagree (residual {res:.3g})")
    return QubitFamily(q, 1.0 / (2.0 * q), C, reference, res)


# -- symmetric states ---------------------------------------------------------


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 < theta <= math.pi / 2 + 1e-15:
        raise ValidationError(f"theta must lie in (0, pi/2], got {theta}")
    return min(theta, math.pi / 2)


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValidationError(f"N must be an integer >= 2, got {n}")
    return int(n)


def _equator_ket(phase: float) -> np.ndarray:
    return np.array([math.cos(math.pi / 4), math.sin(math.pi / 4) * np.exp(1j * phase)])


def symmetric_states(n: int, theta: float) -> tuple[list[np.ndarray], np.ndarray]:
    """``|psi_j> = cos(theta/2)|0> + sin(theta/2) e^{2 pi i (j-1)/N} |1>`` and Bloch vectors."""
    n = _check_n(n)
    theta = _check_theta(theta)
    phases = 2 * np.pi * np.arange(n) / n
    kets = [np.array([math.cos(theta / 2), math.sin(theta / 2) * np.exp(1j * a)])
            for a in phases]
    states = [ket_density(k) for k in kets]
    bloch = np.column_stack([math.sin(theta) * np.cos(phases),
                             math.sin(theta) * np.sin(phases),
                             np.full(n, math.cos(theta))])
    gram = sum(states)
    expected = 0.5 * n * (I2 + math.cos(theta) * PAULI[2])
    if np.max(np.abs(gram - expected)) > 1e-10:
        raise NumericalError("sum of symmetric projectors deviates from its closed form")
    return states, bloch


def symmetric_family_ratio(theta: float, xi: float) -> float:
    """Mixing weight of the symmetric-state family whose rays tilt by ``xi``."""
    theta = _check_theta(theta)
    xi = float(xi)
    if not -1e-15 <= xi <= math.pi / 2 - theta + 1e-15:
        raise ValidationError(f"xi must lie in [0, pi/2 - theta], got {xi}")
    return 1.0 - math.sin(theta) / (math.sin(theta + 2 * xi) + math.sin(theta))


def symmetric_family_ratio_chord(theta: float, xi: float) -> float:
    """Same ratio from chord geometry.

    The tilted ray crosses the unit disc in a chord of length
    ``2 sin(theta + xi) cos(xi)``.
    """
    theta = _check_theta(theta)
    return 1.0 - math.sin(theta) / (2 * math.sin(theta + xi) * math.cos(xi))


def optimal_tilt(theta: float) -> float:
    return math.pi / 4 - _check_theta(theta) / 2


@dataclass(frozen=True)
class SymmetricResult:
    success: float
    achieved: float
    bound: float
    q: float
    states: list
    conjugates: list
    povm: list
    reference: np.ndarray
    povm_residual: float
    annihilation: float


def symmetric_optimal(n: int, theta: float) -> SymmetricResult:
    """Optimal discrimination of N symmetric qubit states via its Helstrom family."""
    n = _check_n(n)
    theta = _check_theta(theta)
    states, _ = symmetric_states(n, theta)
    phases = 2 * np.pi * np.arange(n) / n
    conj_kets = [_equator_ket(a + math.pi) for a in phases]
    chi = [_equator_ket(a) for a in phases]
    povm = [(2.0 / n) * ket_density(k) for k in chi]
    conjugates = [ket_density(k) for k in conj_kets]
    q = 1.0 / (1.0 + math.sin(theta))
    povm_res = float(np.max(np.abs(sum(povm) - I2)))
    annihilation = max(abs(expectation(E, s)) for E, s in zip(povm, conjugates))
    achieved = sum(expectation(E, r) for E, r in zip(povm, states)) / n
    reference = q * states[0] + (1 - q) * conjugates[0]
    return SymmetricResult(
        success=(1.0 + math.sin(theta)) / n,
        achieved=achieved,
        bound=1.0 / (n * q),
        q=q,
        states=states,
        conjugates=conjugates,
        povm=povm,
        reference=reference,
        povm_residual=povm_res,
        annihilation=annihilation,
    )


# -- embedding qubit problems into polytope models -----------------------------


def bloch_polytope(vectors, name: str = "bloch-polytope") -> ConvexStateSpace:
    """Polytope spanned by (distinct) pure-state Bloch vectors; an inner ball approximation."""
    V = []
    for v in np.asarray(vectors, dtype=float):
        if not any(np.linalg.norm(v - w) <= TAU_GEOM for w in V):
            V.append(v)
    return ConvexStateSpace(np.array(V), name=name)


def effect_from_operator(E) -> Effect:
    """Affine functional ``b -> tr(E rho(b))`` on Bloch coordinates."""
    E = hermitian(E)
    return Effect([0.5 * expectation(E, s) for s in PAULI], 0.5 * np.trace(E).real)


def povm_observable(povm) -> Observable:
    return Observable([effect_from_operator(E) for E in povm])


def symmetric_family(n: int, theta: float) -> tuple[WeakHelstromFamily, Observable]:
    """The symmetric-state Helstrom family and POVM as polytope objects in Bloch coordinates."""
    res = symmetric_optimal(n, theta)
    B = np.array([density_to_bloch(r) for r in res.states])
    C = np.array([density_to_bloch(s) for s in res.conjugates])
    space = bloch_polytope(np.vstack([B, C]), name=f"symmetric-N{n}")
    inst = DiscriminationInstance(space, B, np.full(n, 1.0 / n))
    fam = WeakHelstromFamily(inst, np.full(n, res.q), C, density_to_bloch(res.reference),
                             res.bound)
    return fam, povm_observable(res.povm)
