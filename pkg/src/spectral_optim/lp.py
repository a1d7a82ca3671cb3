"""Small dense linear programming solver (two-phase primal simplex, Bland's rule).

Solves max/min of a linear objective subject to inequality constraints
(normal, x) <= rhs and box bounds lo <= x <= hi.  Solutions are always
vertices of the feasible polytope, which is what the row-set optimizers need:
a vertex row keeps the iteration on extreme points of the uncertainty sets.

The implementation is the classical tableau method.  Bland's anti-cycling
rule (smallest eligible index for both the entering and leaving variable)
guarantees termination on degenerate polytopes at a modest speed cost, which
is irrelevant at the problem sizes seen here (tens of variables).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LinearProgram",
    "LPInfeasibleError",
    "LPUnboundedError",
    "lp_optimize",
]


class LPInfeasibleError(ValueError):
    """No point satisfies all constraints."""


class LPUnboundedError(ValueError):
    """The objective is unbounded over the feasible set."""


@dataclass
class LinearProgram:
    """max or min of (objective, x) s.t. normals @ x <= rhs, lo <= x <= hi.

    ``normals`` is an (m, n) array (m may be zero), ``rhs`` its right-hand
    sides.  Lower bounds must be finite; upper bounds may be +inf.
    """

    objective: np.ndarray
    normals: np.ndarray
    rhs: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    sense: str = "max"

    def __post_init__(self):
        self.objective = np.atleast_1d(np.asarray(self.objective, dtype=float))
        n = self.objective.shape[0]
        self.normals = np.asarray(self.normals, dtype=float).reshape(-1, n)
        self.rhs = np.atleast_1d(np.asarray(self.rhs, dtype=float))
        self.lo = np.atleast_1d(np.asarray(self.lo, dtype=float))
        self.hi = np.atleast_1d(np.asarray(self.hi, dtype=float))
        if self.rhs.shape[0] != self.normals.shape[0]:
            raise ValueError("rhs length must match number of constraint rows")
        if self.lo.shape[0] != n or self.hi.shape[0] != n:
            raise ValueError("box bounds must match objective length")
        if not np.all(np.isfinite(self.lo)):
            raise ValueError("lower bounds must be finite")
        if np.any(self.hi < self.lo):
            raise ValueError("box is empty (hi < lo)")
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")


def _pivot(T: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[row]
    basis[row] = col


def _run_simplex(T: np.ndarray, basis: np.ndarray, ncols: int, tol: float) -> None:
    """Drive the tableau to optimality in place (objective row is T[-1]).

    The objective row holds z_j - c_j for a maximization; a column with
    T[-1, j] < -tol improves the objective.  Bland's rule everywhere.
    """
    m = T.shape[0] - 1
    max_pivots = 20000 * (ncols + m)
    for _ in range(max_pivots):
        col = -1
        for j in range(ncols):
            if T[-1, j] < -tol:
                col = j
                break
        if col < 0:
            return
        row, best_ratio, best_var = -1, np.inf, -1
        for i in range(m):
            a = T[i, col]
            if a > tol:
                ratio = T[i, -1] / a
                if (ratio < best_ratio - tol
                        or (abs(ratio - best_ratio) <= tol and basis[i] < best_var)):
                    row, best_ratio, best_var = i, ratio, basis[i]
        if row < 0:
            raise LPUnboundedError("LP unbounded")
        _pivot(T, basis, row, col)
    raise RuntimeError("simplex exceeded its pivot budget")


def _simplex_max(c: np.ndarray, A: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """Maximize (c, y) s.t. A y <= b, y >= 0; returns an optimal vertex y."""
    m, n = A.shape
    flip = b < 0
    A = np.where(flip[:, None], -A, A)
    b = np.where(flip, -b, b)
    # Columns: n structural, m slack/surplus, then one artificial per flipped
    # row.  Flipped rows are >= constraints: surplus coefficient -1.
    art_rows = np.flatnonzero(flip)
    n_art = art_rows.size
    ncols = n + m + n_art
    T = np.zeros((m + 1, ncols + 1))
    T[:m, :n] = A
    for i in range(m):
        T[i, n + i] = -1.0 if flip[i] else 1.0
    for k, i in enumerate(art_rows):
        T[i, n + m + k] = 1.0
    T[:m, -1] = b
    basis = np.empty(m, dtype=int)
    for i in range(m):
        basis[i] = n + i
    for k, i in enumerate(art_rows):
        basis[i] = n + m + k

    if n_art:
        # Phase 1: maximize -sum(artificials).  With artificials basic the
        # priced objective row is -sum of their rows, except on the
        # artificial columns themselves where z_j - c_j = 0.
        for i in art_rows:
            T[-1] -= T[i]
        T[-1, n + m:ncols] = 0.0
        _run_simplex(T, basis, ncols, tol)
        if T[-1, -1] < -1e-7:
            raise LPInfeasibleError("LP infeasible")
        # Pivot any artificial still basic (at zero level) out on a real
        # column; a row with no real pivot is redundant and can stay put
        # with its artificial column frozen.
        for i in range(m):
            if basis[i] >= n + m:
                piv = -1
                for j in range(n + m):
                    if abs(T[i, j]) > tol:
                        piv = j
                        break
                if piv >= 0:
                    _pivot(T, basis, i, piv)
        T[:, n + m:ncols] = 0.0
        T[-1, :] = 0.0

    # Phase 2: price out the real objective for the current basis.
    T[-1, :n] = -c
    for i in range(m):
        if basis[i] < n:
            T[-1] -= T[-1, basis[i]] * T[i]
    _run_simplex(T, basis, n + m, tol)

    y = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            y[basis[i]] = T[i, -1]
    return y


def lp_optimize(lp: LinearProgram, tol: float = 1e-9) -> tuple[np.ndarray, float]:
    """Solve the program, returning an optimal vertex and its objective value.

    Raises
    ------
    LPInfeasibleError
        When no feasible point exists.
    LPUnboundedError
        When the objective is unbounded in the requested direction.
    """
    n = lp.objective.shape[0]
    c = lp.objective if lp.sense == "max" else -lp.objective
    rows = [lp.normals]
    rhs = [lp.rhs - lp.normals @ lp.lo]
    finite_hi = np.isfinite(lp.hi)
    if np.any(finite_hi):
        idx = np.flatnonzero(finite_hi)
        ub = np.zeros((idx.size, n))
        ub[np.arange(idx.size), idx] = 1.0
        rows.append(ub)
        rhs.append(lp.hi[idx] - lp.lo[idx])
    A = np.vstack(rows)
    b = np.concatenate(rhs)
    y = _simplex_max(c, A, b, tol)
    x = y + lp.lo
    return x, float(lp.objective @ x)
