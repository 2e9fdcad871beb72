"""Random instance generators shared by the property tests."""
import numpy as np

from helstrom_gpt import DiscriminationInstance, Effect, Observable
from helstrom_gpt.models import classical_space, square_space


def random_instance(rng, model=None, n=None):
    """Random square or simplex instance with distinct states and positive priors."""
    model = model or rng.choice(["square", "simplex"])
    if model == "square":
        space = square_space()
    else:
        space = classical_space(int(rng.integers(2, 6)))
    n = n or int(rng.integers(2, 6))
    V = space.vertices
    while True:
        W = rng.dirichlet(np.full(len(V), 0.6), size=n)
        S = W @ V
        gaps = [np.linalg.norm(S[i] - S[j]) for i in range(n) for j in range(i)]
        if min(gaps) > 1e-3:
            break
    priors = rng.dirichlet(np.ones(n)) * 0.9 + 0.1 / n
    return DiscriminationInstance(space, S, priors)


def random_observable(rng, space, n):
    """Random valid N-outcome observable on a polytope space."""
    V = space.vertices
    effects = []
    for _ in range(n - 1):
        a = rng.uniform(-1, 1, size=space.dimension)
        vals = V @ a
        lo, hi = vals.min(), vals.max()
        scale = rng.uniform(0, 1) / n / max(hi - lo, 1e-12)
        effects.append(Effect(a * scale, -lo * scale))
    total_lin = np.sum([e.linear for e in effects], axis=0)
    total_off = sum(e.offset for e in effects)
    effects.append(Effect(-total_lin, 1.0 - total_off))
    order = rng.permutation(n)
    return Observable([effects[i] for i in order])


def random_bloch(rng, pure=False):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v if pure else v * rng.uniform() ** (1 / 3)


def random_hermitian(rng, d):
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return 0.5 * (A + A.conj().T)


def random_density(rng, d):
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def vertex_enumeration_max(c, A_ub, b_ub):
    """Brute-force ``max c.x`` over ``A_ub x <= b_ub, x >= 0`` (bounded, small n)."""
    from itertools import combinations

    n = len(c)
    A = np.vstack([A_ub, -np.eye(n)])
    b = np.concatenate([b_ub, np.zeros(n)])
    best = None
    for rows in combinations(range(len(A)), n):
        M = A[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, b[list(rows)])
        if np.all(A @ x <= b + 1e-9):
            val = float(c @ x)
            best = val if best is None else max(best, val)
    return best
