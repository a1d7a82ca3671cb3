"""Spectral radius optimization for non-negative matrices over product
families of row uncertainty sets.

The central objects are :class:`~spectral_optim.rows.ProductFamily` (one row
uncertainty set per matrix row) and the optimizers in
:mod:`~spectral_optim.optimize`, which minimize or maximize the spectral
radius by iteratively swapping rows against leading eigenvectors.  See the
README for a tour.
"""

from .linalg import (
    Eigenpair,
    PowerConfig,
    PowerIterationError,
    left_eigenvector,
    lower_bound_t,
    selected_eigenpair,
    upper_bound_s,
)
from .lp import LinearProgram, LPInfeasibleError, LPUnboundedError, lp_optimize
from .rows import (
    BlendedSet,
    Ellipsoid,
    FiniteSet,
    GraphDegreeSet,
    HalfspacePoly,
    L1Ball,
    ProductFamily,
    RowSet,
    best_row,
)
from .optimize import (
    IterationTrace,
    OptimizationResult,
    OptimizerConfig,
    TraceRow,
    brute_force_optimum,
    contraction_factor,
    detect_cycle,
    greedy,
    greedy_step,
    linear_rate_bound,
    matrix_signature,
    optimize,
    perturb_family,
    selective_greedy,
    spectral_simplex,
)
from .apps import (
    DegreeSpec,
    StabilizationProblem,
    closest_stable,
    closest_unstable,
    degree_family,
    optimize_graph,
    stabilization_family,
)
from .gen import CounterStream, generate_random_family, generate_random_poly_family
from .bench import BenchCell, BenchSpec, run_benchmark

__version__ = "0.1.0"

__all__ = [
    "Eigenpair",
    "PowerConfig",
    "PowerIterationError",
    "left_eigenvector",
    "lower_bound_t",
    "selected_eigenpair",
    "upper_bound_s",
    "LinearProgram",
    "LPInfeasibleError",
    "LPUnboundedError",
    "lp_optimize",
    "BlendedSet",
    "Ellipsoid",
    "FiniteSet",
    "GraphDegreeSet",
    "HalfspacePoly",
    "L1Ball",
    "ProductFamily",
    "RowSet",
    "best_row",
    "IterationTrace",
    "OptimizationResult",
    "OptimizerConfig",
    "TraceRow",
    "brute_force_optimum",
    "contraction_factor",
    "detect_cycle",
    "greedy",
    "greedy_step",
    "linear_rate_bound",
    "matrix_signature",
    "optimize",
    "perturb_family",
    "selective_greedy",
    "spectral_simplex",
    "DegreeSpec",
    "StabilizationProblem",
    "closest_stable",
    "closest_unstable",
    "degree_family",
    "optimize_graph",
    "stabilization_family",
    "CounterStream",
    "generate_random_family",
    "generate_random_poly_family",
    "BenchCell",
    "BenchSpec",
    "run_benchmark",
]
