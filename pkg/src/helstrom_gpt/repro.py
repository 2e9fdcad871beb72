"""Reproduction table: closed-form values next to independently computed ones."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discrimination import DiscriminationInstance, helstrom_bound_lp
from .errors import TAU_NUM
from .models import (classical_binary_family, classical_embed_quantum,
                     classical_map_oracle, classical_space, square_pure_state_discrimination,
                     square_space)
from .quantum import (bloch_to_density, quantum_binary_helstrom, qubit_geometric_family,
                      symmetric_optimal, trace_norm)

CASES = ("qubit-binary", "symmetric", "square-binary", "square-pure", "classical-binary")
DEFAULT_SEED = 20090521


@dataclass(frozen=True)
class Row:
    case: str
    label: str
    expected: float
    computed: float
    tol: float

    @property
    def diff(self) -> float:
        return abs(self.expected - self.computed)

    @property
    def passed(self) -> bool:
        return math.isfinite(self.computed) and self.diff <= self.tol


def random_bloch(rng, size=None) -> np.ndarray:
    """Uniform samples from the Bloch ball."""
    shape = (3,) if size is None else (size, 3)
    v = rng.normal(size=shape)
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    r = rng.random(() if size is None else (size, 1)) ** (1 / 3)
    return v * r


def qubit_binary_rows(rng, tol, count=5):
    rows = []
    for k in range(count):
        b1, b2 = random_bloch(rng), random_bloch(rng)
        closed = 0.5 * (1 + 0.5 * np.linalg.norm(b1 - b2))
        spectral = quantum_binary_helstrom(bloch_to_density(b1), bloch_to_density(b2),
                                           0.5, 0.5).success
        rows.append(Row("qubit-binary", f"uniform #{k} spectral", closed, spectral, tol))
        rows.append(Row("qubit-binary", f"uniform #{k} family ratio", closed,
                        qubit_geometric_family(b1, b2).ratio, tol))
    for k in range(count):
        b1, b2 = random_bloch(rng), random_bloch(rng)
        p1 = float(rng.uniform(0.05, 0.95))
        r1, r2 = bloch_to_density(b1), bloch_to_density(b2)
        closed = 0.5 * (1 + trace_norm(p1 * r1 - (1 - p1) * r2))
        rows.append(Row("qubit-binary", f"p1={p1:.3f} spectral", closed,
                        quantum_binary_helstrom(r1, r2, p1, 1 - p1).success, tol))
    return rows


def symmetric_rows(tol, thetas=(math.pi / 6, math.pi / 3, math.pi / 2)):
    rows = []
    for n in range(2, 9):
        for th in thetas:
            res = symmetric_optimal(n, th)
            closed = (1 + math.sin(th)) / n
            rows.append(Row("symmetric", f"N={n} theta={th:.4f} POVM", closed, res.achieved, tol))
            rows.append(Row("symmetric", f"N={n} theta={th:.4f} ratio", closed, res.bound, tol))
    return rows


def square_binary_rows(rng, tol, count=6):
    space = square_space()
    rows = []
    for k in range(count):
        s1, s2 = rng.random(2), rng.random(2)
        d = np.abs(s1 - s2)
        which = "x" if d[0] >= d[1] else "y"
        closed = 0.5 * (1 + d.max())
        lp_value = helstrom_bound_lp(DiscriminationInstance(space, [s1, s2], [0.5, 0.5])).value
        rows.append(Row("square-binary", f"#{k} case {which} LP", closed, lp_value, tol))
    return rows


def square_pure_rows(tol):
    res = square_pure_state_discrimination()
    lp_value = helstrom_bound_lp(res.family.instance).value
    return [
        Row("square-pure", "family ratio", 0.5, res.success, tol),
        Row("square-pure", "LP", 0.5, lp_value, tol),
        Row("square-pure", "certified", 1.0, float(res.certified), 0.0),
    ]


def classical_binary_rows(rng, tol, count=4):
    inst_rows = [((0.7, 0.3), (0.2, 0.8), 0.4)]
    for _ in range(count):
        d = int(rng.integers(2, 7))
        inst_rows.append((rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d)),
                          float(rng.uniform(0.05, 0.95))))
    rows = []
    for k, (s1, s2, p1) in enumerate(inst_rows):
        s1, s2 = np.asarray(s1, float), np.asarray(s2, float)
        inst = DiscriminationInstance(classical_space(s1.size), [s1, s2], [p1, 1 - p1])
        oracle = classical_map_oracle(inst)
        fam = classical_binary_family(s1, s2, p1, 1 - p1)
        rows.append(Row("classical-binary", f"#{k} d={s1.size} family", oracle, fam.success, tol))
        rows.append(Row("classical-binary", f"#{k} d={s1.size} LP", oracle,
                        helstrom_bound_lp(inst).value, tol))
        q = quantum_binary_helstrom(classical_embed_quantum(s1), classical_embed_quantum(s2),
                                    p1, 1 - p1).success
        rows.append(Row("classical-binary", f"#{k} d={s1.size} quantum", oracle, q, tol))
    return rows


def run(case: str = "all", tol: float = TAU_NUM, seed: int = DEFAULT_SEED) -> list[Row]:
    """Rows for ``case`` (one of ``CASES`` or ``"all"``)."""
    if case != "all" and case not in CASES:
        raise ValueError(f"unknown case {case!r}; choose from {', '.join(CASES)} or all")
    rng = np.random.default_rng(seed)
    builders = {
        "qubit-binary": lambda: qubit_binary_rows(rng, tol),
        "symmetric": lambda: symmetric_rows(tol),
        "square-binary": lambda: square_binary_rows(rng, max(tol, 1e-8)),
        "square-pure": lambda: square_pure_rows(tol),
        "classical-binary": lambda: classical_binary_rows(rng, tol),
    }
    chosen = CASES if case == "all" else (case,)
    return [row for name in chosen for row in builders[name]()]


def format_table(rows) -> str:
    head = f"{'case':<17} {'instance':<28} {'closed form':>20} {'computed':>20} {'|diff|':>10}  result"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r.case:<17} {r.label:<28} {r.expected:>20.15f} {r.computed:>20.15f} "
                     f"{r.diff:>10.2e}  {'pass' if r.passed else 'FAIL'}")
    n_pass = sum(r.passed for r in rows)
    lines.append(f"{n_pass}/{len(rows)} rows pass")
    return "\n".join(lines)
