"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Times Jacobi diagonalization of random Hermitian matrices and the
discrimination LP on random square and simplex instances, once per backend.
"""
from __future__ import annotations

import argparse
import importlib
import statistics
import time

import numpy as np

from helstrom_gpt import discrimination, lp
from helstrom_gpt._kernels import _pykernels
from helstrom_gpt.models import classical_space, square_space
from helstrom_gpt.quantum import JACOBI_MAX_SWEEPS, JACOBI_TOL


def _backends():
    found = {"python": _pykernels}
    try:
        found["compiled"] = importlib.import_module("helstrom_gpt._kernels._ckernels")
    except ImportError:
        pass
    return found


def _hermitians(rng, count, d):
    out = []
    for _ in range(count):
        A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        out.append(np.ascontiguousarray(0.5 * (A + A.conj().T)))
    return out


def _lps(rng, count):
    progs = []
    for k in range(count):
        space = square_space() if k % 2 else classical_space(5)
        n = 4
        W = rng.dirichlet(np.ones(len(space)), size=n)
        inst = discrimination.DiscriminationInstance(space, W @ space.vertices,
                                                     rng.dirichlet(np.ones(n)))
        progs.append(discrimination.discrimination_lp(inst))
    return progs


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    mats = {d: _hermitians(rng, 50, d) for d in (4, 8, 16)}
    progs = _lps(rng, 40)

    results = {}
    for name, mod in _backends().items():
        row = {}
        for d, batch in mats.items():
            row[f"jacobi d={d} (x50)"] = _time(
                lambda: [mod.jacobi_eigh(A, JACOBI_TOL, JACOBI_MAX_SWEEPS) for A in batch],
                args.repeat)
        row["discrimination LP (x40)"] = _time(
            lambda: [lp.solve(p, kernels=mod) for p in progs], args.repeat)
        results[name] = row

    names = list(results)
    tasks = list(results[names[0]])
    header = f"{'workload':<26}" + "".join(f"{n + ' [ms]':>16}" for n in names)
    if len(names) == 2:
        header += f"{'speed-up':>10}"
    print(header)
    print("-" * len(header))
    for task in tasks:
        line = f"{task:<26}" + "".join(f"{1e3 * results[n][task]:>16.2f}" for n in names)
        if len(names) == 2:
            line += f"{results['python'][task] / results['compiled'][task]:>9.1f}x"
        print(line)
    if len(names) == 1:
        print("compiled extension not built; only the python backend was timed")


if __name__ == "__main__":
    main()
