"""Applications: extremal graph spectral radii and closest (un)stable matrices.

Two problems reduce directly to product-family optimization:

* Among directed graphs on d vertices whose out-degrees are prescribed,
  which adjacency matrix has the largest (or smallest) spectral radius?
  Row i ranges over 0/1 vectors with a row-sum budget, so each row is an
  independent :class:`~spectral_optim.rows.GraphDegreeSet`.

* Given a non-negative matrix A, how far (row-wise L1, i.e. operator
  infinity norm) must one move to make the spectral radius cross a target?
  For a fixed radius r the reachable matrices form a product family of
  L1 balls centered at the rows of A; the minimal (or maximal) spectral
  radius over that family is monotone in r, so the critical radius is found
  by bisection with one inner optimization per evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import PowerConfig, check_matrix, selected_eigenpair
from .optimize import OptimizerConfig, selective_greedy
from .rows import GraphDegreeSet, L1Ball, ProductFamily

__all__ = [
    "DegreeSpec",
    "degree_family",
    "optimize_graph",
    "StabilizationProblem",
    "stabilization_family",
    "closest_stable",
    "closest_unstable",
]


@dataclass(frozen=True)
class DegreeSpec:
    """Prescribed out-degrees for a graph radius problem.

    ``direction='max'`` maximizes the radius over graphs with at most the
    given out-degrees; ``'min'`` minimizes it over graphs with at least the
    given out-degrees.  (The slack directions are the only ones that bind:
    extra edges never hurt a maximizer and never help a minimizer.)
    """

    degrees: tuple[int, ...]
    direction: str = "max"

    def __post_init__(self):
        degrees = tuple(int(n) for n in self.degrees)
        d = len(degrees)
        if d == 0:
            raise ValueError("need at least one vertex")
        for n in degrees:
            if not (1 <= n <= d):
                raise ValueError(f"degree {n} out of range for {d} vertices")
        if self.direction not in ("max", "min"):
            raise ValueError(f"direction must be 'max' or 'min', got {self.direction!r}")
        object.__setattr__(self, "degrees", degrees)


def degree_family(spec: DegreeSpec) -> ProductFamily:
    """Product family of 0/1 rows matching the degree specification."""
    d = len(spec.degrees)
    sense = "at_most" if spec.direction == "max" else "at_least"
    return ProductFamily(tuple(GraphDegreeSet(d, n, sense) for n in spec.degrees))


def optimize_graph(spec: DegreeSpec,
                   config: OptimizerConfig | None = None) -> tuple[np.ndarray, float]:
    """Extremal-spectral-radius adjacency matrix for prescribed out-degrees.

    Returns the 0/1 adjacency matrix (row sums exactly equal to the degrees)
    and its spectral radius.
    """
    cfg = config or OptimizerConfig()
    cfg = replace(cfg, direction=spec.direction)
    res = selective_greedy(degree_family(spec), cfg)
    adjacency = np.rint(res.matrix)
    return adjacency, res.rho


@dataclass(frozen=True)
class StabilizationProblem:
    """Move a non-negative matrix's spectral radius across ``target``.

    ``r_tol`` is the bisection tolerance on the critical radius.
    """

    A: np.ndarray
    target: float = 1.0
    r_tol: float = 1e-6

    def __post_init__(self):
        A = check_matrix(self.A)
        if not (np.isfinite(self.target) and self.target >= 0):
            raise ValueError("target must be finite and non-negative")
        if not (self.r_tol > 0):
            raise ValueError("r_tol must be positive")
        object.__setattr__(self, "A", A)


def stabilization_family(A, radius: float) -> ProductFamily:
    """Family of matrices within row-wise L1 distance ``radius`` of A."""
    A = check_matrix(A)
    return ProductFamily(tuple(L1Ball(A[i], radius) for i in range(A.shape[0])))


def _clip_to_radius(X: np.ndarray, A: np.ndarray, radius: float) -> np.ndarray:
    """Project each row of X into the L1 ball of the matching row of A."""
    Y = np.array(X, dtype=float, copy=True)
    for i in range(A.shape[0]):
        dev = Y[i] - A[i]
        total = float(np.sum(np.abs(dev)))
        if total > radius:
            Y[i] = A[i] + dev * (radius / total)
    return np.maximum(Y, 0.0)


def _inner_config(config: OptimizerConfig | None, direction: str) -> OptimizerConfig:
    cfg = config or OptimizerConfig()
    return replace(cfg, direction=direction, method="selective-greedy")


def _bisect(A: np.ndarray, lo: float, hi: float, X_hi: np.ndarray,
            accept, cfg: OptimizerConfig, r_tol: float):
    """Shrink [lo, hi] keeping accept(rho(best at hi)) true; returns (X, hi).

    Inner optimizations are warm-started from the previous optimum clipped
    into the current ball.
    """
    X_prev = X_hi
    while hi - lo > r_tol:
        mid = 0.5 * (lo + hi)
        fam = stabilization_family(A, mid)
        res = selective_greedy(fam, cfg,
                               initial_matrix=_clip_to_radius(X_prev, A, mid))
        X_prev = res.matrix
        if accept(res.rho):
            hi, X_hi = mid, res.matrix
        else:
            lo = mid
    return X_hi, hi


def closest_stable(problem: StabilizationProblem,
                   config: OptimizerConfig | None = None) -> tuple[np.ndarray, float]:
    """Nearest matrix (row-wise L1 / operator infinity norm) with spectral
    radius at most ``target``.

    Returns (X, r_star) with X non-negative, ||X - A||_inf <= r_star, and
    rho(X) <= target.  If A is already within target the answer is (A, 0).
    """
    A = problem.A
    cfg = _inner_config(config, "min")
    pair = selected_eigenpair(A, cfg.power)
    if pair.rho <= problem.target:
        return A.copy(), 0.0
    hi = float(np.max(A.sum(axis=1)))   # the zero matrix is reachable at this radius
    res = selective_greedy(stabilization_family(A, hi), cfg, initial_matrix=A.copy())
    if res.rho > problem.target:
        raise RuntimeError(
            "could not stabilize even at the full infinity-norm radius")
    return _bisect(A, 0.0, hi, res.matrix,
                   lambda rho: rho <= problem.target, cfg, problem.r_tol)


def closest_unstable(problem: StabilizationProblem,
                     config: OptimizerConfig | None = None) -> tuple[np.ndarray, float]:
    """Nearest matrix with spectral radius reaching ``target`` (default 1).

    Mirror of :func:`closest_stable`: maximizes the radius over growing L1
    balls.  Acceptance allows a 1e-6 slack under the target so the critical
    radius is well-defined under floating point.
    """
    A = problem.A
    cfg = _inner_config(config, "max")
    pair = selected_eigenpair(A, cfg.power)
    if pair.rho >= problem.target:
        return A.copy(), 0.0
    # Adding r to a diagonal entry keeps the matrix in the ball and pushes
    # the radius to at least r, so r = target always suffices in exact
    # arithmetic; the doubling loop is a numerical safety net.
    hi = max(problem.target, problem.r_tol)
    accept = lambda rho: rho >= problem.target - 1e-6
    for _ in range(64):
        res = selective_greedy(stabilization_family(A, hi), cfg,
                               initial_matrix=A.copy())
        if accept(res.rho):
            break
        hi *= 2.0
    else:
        raise RuntimeError("could not destabilize within the radius cap")
    return _bisect(A, 0.0, hi, res.matrix, accept, cfg, problem.r_tol)
