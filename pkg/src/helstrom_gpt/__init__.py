"""Helstrom bounds and Helstrom families of ensembles for general probabilistic theories."""
from ._kernels import BACKEND
from .discrimination import (DiscriminationInstance, Effect, HelstromBound, Observable,
                             binary_bound_form, distinguishable, helstrom_bound_lp,
                             success_probability)
from .errors import TAU_GEOM, TAU_NUM, HelstromError, NumericalError, ValidationError
from .families import (Certificate, FamilyReport, RatioBound, WeakHelstromFamily,
                       binary_certify_by_distinguishability, certify_optimal,
                       geometric_family, ratio_bound_check, trivial_family, validate, weaken)
from .geometry import ConvexStateSpace, contains, interpolation_ratio, ray_to_boundary
from .lp import LinearProgram, LpSolution, maximize, solve
from .models import (FamilyResult, classical_binary_family, classical_map_oracle,
                     classical_space, square_binary, square_pure_state_discrimination,
                     square_space)
from .quantum import (quantum_binary_helstrom, qubit_geometric_family, symmetric_family,
                      symmetric_optimal, trace_norm)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "TAU_GEOM", "TAU_NUM",
    "HelstromError", "NumericalError", "ValidationError",
    "LinearProgram", "LpSolution", "maximize", "solve",
    "ConvexStateSpace", "contains", "interpolation_ratio", "ray_to_boundary",
    "DiscriminationInstance", "Effect", "HelstromBound", "Observable",
    "binary_bound_form", "distinguishable", "helstrom_bound_lp", "success_probability",
    "Certificate", "FamilyReport", "RatioBound", "WeakHelstromFamily",
    "binary_certify_by_distinguishability", "certify_optimal", "geometric_family",
    "ratio_bound_check", "trivial_family", "validate", "weaken",
    "FamilyResult", "classical_binary_family", "classical_map_oracle", "classical_space",
    "square_binary", "square_pure_state_discrimination", "square_space",
    "quantum_binary_helstrom", "qubit_geometric_family", "symmetric_family",
    "symmetric_optimal", "trace_norm",
]
