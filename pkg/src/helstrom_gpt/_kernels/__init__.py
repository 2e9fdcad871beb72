"""Numerical kernels: compiled when the Cython extension is built, numpy otherwise."""
try:
    from ._ckernels import jacobi_eigh, pivot, simplex_iterate
    BACKEND = "compiled"
except ImportError:  # extension not built
    from ._pykernels import jacobi_eigh, pivot, simplex_iterate
    BACKEND = "python"

OPTIMAL = 0
UNBOUNDED = 1
ITERATION_LIMIT = 2

__all__ = ["BACKEND", "jacobi_eigh", "pivot", "simplex_iterate",
           "OPTIMAL", "UNBOUNDED", "ITERATION_LIMIT"]
