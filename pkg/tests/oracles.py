"""Independent oracles the tests check the library against.

Everything here is deliberately written from scratch with the dumbest
correct algorithm available (exhaustive enumeration, dense eigensolvers,
plain unshifted power iteration) so that agreement with the library is a
meaningful two-route check, not the same code called twice.
"""

from __future__ import annotations

import itertools

import numpy as np

# ---------------------------------------------------------------------------
# generic spectral radius via the dense eigensolver


def eig_rho(A) -> float:
    """max |eigenvalue| straight from numpy's dense eigensolver."""
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(A, dtype=float)))))


def brute_family_optimum(rows_per_set, direction="max"):
    """Enumerate every member of a finite product family.

    ``rows_per_set`` is a sequence of 2-D arrays (one per row index).
    Returns (best_matrix, best_rho) with ties going to the first matrix in
    lexicographic choice order, matching the library's documented rule.
    """
    best_rho = None
    best_mat = None
    for choice in itertools.product(*[range(len(r)) for r in rows_per_set]):
        A = np.vstack([np.asarray(rows_per_set[i][j], dtype=float)
                       for i, j in enumerate(choice)])
        rho = eig_rho(A)
        if best_rho is None or (rho > best_rho if direction == "max" else rho < best_rho):
            best_rho = rho
            best_mat = A
    return best_mat, best_rho


# ---------------------------------------------------------------------------
# Perron vector of the positively perturbed matrix


def perturbed_leading_vector(A, eps_perturb=1e-9):
    """Leading eigenvector of A + eps*ones, from the dense eigensolver.

    The perturbed matrix is entrywise positive, so its leading eigenvalue is
    simple with a unique positive eigenvector: no iteration, no shift, no
    selected-vector logic.  (Power iteration is useless as an oracle here:
    the perturbed spectral gap can be O(eps).)
    """
    A = np.asarray(A, dtype=float)
    B = A + eps_perturb * np.ones_like(A)
    vals, vecs = np.linalg.eig(B)
    lead = int(np.argmax(vals.real))
    v = vecs[:, lead].real
    v = np.abs(v)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# LP by exhaustive vertex enumeration


def lp_vertex_oracle(objective, normals, rhs, lo, hi, sense="max"):
    """Solve max/min (objective, x) s.t. normals@x <= rhs, lo <= x <= hi
    by enumerating every intersection of n constraint hyperplanes.

    Returns (x, value) or None when no feasible vertex exists.  Only for
    tiny instances; cost is C(m + 2n, n) linear solves.
    """
    c = np.asarray(objective, dtype=float)
    n = c.size
    rows = [np.asarray(r, dtype=float) for r in normals]
    rhss = [float(b) for b in rhs]
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    for j in range(n):
        rows.append(-np.eye(n)[j])
        rhss.append(-lo[j])
        if np.isfinite(hi[j]):
            rows.append(np.eye(n)[j])
            rhss.append(hi[j])
    G = np.vstack(rows)
    h = np.asarray(rhss)
    best = None
    for idx in itertools.combinations(range(len(rows)), n):
        M = G[list(idx)]
        b = h[list(idx)]
        try:
            x = np.linalg.solve(M, b)
        except np.linalg.LinAlgError:
            continue
        if not np.all(np.isfinite(x)):
            continue
        if np.any(G @ x > h + 1e-9):
            continue
        val = float(c @ x)
        if best is None or (val > best[1] + 0 if sense == "max" else val < best[1]):
            if best is None or (val > best[1] if sense == "max" else val < best[1]):
                best = (x, val)
    return best


def l1ball_lp_data(center, radius, v, direction):
    """The lifted LP equivalent to optimizing (v, x) over the set
    {x >= 0, sum_j |x_j - center_j| <= radius}.

    Variables are (x, y) with y_j >= |x_j - center_j|.  Returns
    (objective, normals, rhs, lo, hi, sense) ready for an LP solver; the
    x-part of the solution is the optimal row.
    """
    c = np.asarray(center, dtype=float)
    v = np.asarray(v, dtype=float)
    d = c.size
    obj = np.concatenate([v, np.zeros(d)])
    normals = []
    rhs = []
    eye = np.eye(d)
    for j in range(d):
        normals.append(np.concatenate([eye[j], -eye[j]]))   # x_j - y_j <= c_j
        rhs.append(c[j])
        normals.append(np.concatenate([-eye[j], -eye[j]]))  # -x_j - y_j <= -c_j
        rhs.append(-c[j])
    normals.append(np.concatenate([np.zeros(d), np.ones(d)]))  # sum y <= r
    rhs.append(float(radius))
    lo = np.zeros(2 * d)
    hi = np.concatenate([c + radius, np.full(d, float(radius))])
    sense = "max" if direction == "max" else "min"
    return obj, normals, rhs, lo, hi, sense


def run_random_lp_comparison(n_cases, seed=0):
    """Compare the library LP solver against the vertex-enumeration oracle
    on random small instances (d <= 4, m <= 4, signed normals, box [0, 1]).

    Returns (max_value_deviation, infeasible_agreements); raises on any
    disagreement about feasibility.
    """
    from spectral_optim import LinearProgram, LPInfeasibleError, lp_optimize

    rng = np.random.default_rng(seed)
    worst = 0.0
    infeasible = 0
    for case in range(n_cases):
        d = 1 + case % 4
        m = 1 + (case // 4) % 4
        objective = rng.normal(size=d)
        normals = rng.normal(size=(m, d))
        rhs = rng.uniform(-0.2, 1.0, size=m)
        lo = np.zeros(d)
        hi = np.ones(d)
        sense = "max" if case % 2 == 0 else "min"
        expected = lp_vertex_oracle(objective, normals, rhs, lo, hi, sense)
        lp = LinearProgram(objective=objective, normals=normals, rhs=rhs,
                           lo=lo, hi=hi, sense=sense)
        if expected is None:
            try:
                lp_optimize(lp)
            except LPInfeasibleError:
                infeasible += 1
                continue
            raise AssertionError(f"case {case}: oracle says infeasible, solver solved it")
        x, value = lp_optimize(lp)
        worst = max(worst, abs(value - expected[1]))
        if np.any(normals @ x > rhs + 1e-10) or np.any(x < -1e-10) or np.any(x > 1 + 1e-10):
            raise AssertionError(f"case {case}: solver point violates constraints")
    return worst, infeasible


# ---------------------------------------------------------------------------
# degree-constrained 0/1 rows by enumeration


def degree_rows(d, n, sense):
    """Every 0/1 vector of length d with at most / at least n ones."""
    sizes = range(0, n + 1) if sense == "at_most" else range(n, d + 1)
    out = []
    for k in sizes:
        for pos in itertools.combinations(range(d), k):
            row = np.zeros(d)
            row[list(pos)] = 1.0
            out.append(row)
    return out


def degree_best_value(d, n, sense, v, direction):
    dots = [float(row @ np.asarray(v, dtype=float)) for row in degree_rows(d, n, sense)]
    return max(dots) if direction == "max" else min(dots)


# ---------------------------------------------------------------------------
# axis-aligned ellipsoid support function + sampling refinement


def ellipsoid_support_value(center, radius, axes, v, direction):
    """Exact optimum of (v, x) over {center + radius*diag(axes)u : ||u|| <= 1},
    via the support function: (c, v) +/- radius*||axes*v||_2."""
    c = np.asarray(center, dtype=float)
    a = np.asarray(axes, dtype=float)
    v = np.asarray(v, dtype=float)
    reach = float(radius) * float(np.linalg.norm(a * v))
    base = float(c @ v)
    return base + reach if direction == "max" else base - reach


def ellipsoid_sample_best(center, radius, axes, v, direction, samples=20000, seed=0):
    """Best objective over random surface points; lower (upper) bound for
    the max (min) support value, used to confirm attainability."""
    rng = np.random.default_rng(seed)
    c = np.asarray(center, dtype=float)
    a = np.asarray(axes, dtype=float)
    v = np.asarray(v, dtype=float)
    u = rng.normal(size=(samples, c.size))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    pts = c + float(radius) * u * a
    vals = pts @ v
    return float(np.max(vals)) if direction == "max" else float(np.min(vals))


def ellipsoid_residual(center, radius, axes, x):
    """||(x - c) / (r*a)||_2 - 1; <= 0 means x is inside the ellipsoid."""
    c = np.asarray(center, dtype=float)
    a = np.asarray(axes, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(np.linalg.norm((x - c) / (float(radius) * a))) - 1.0


# ---------------------------------------------------------------------------
# the worked 3x3 fixture, spelled out once for every test file


def fixture_rows():
    """Row sets of the 3x3 worked family used across the tests."""
    f1 = np.array([[1.0, 1.0, 1.0], [0.0, 5.0, 10.0],
                   [0.0, 10.0, 5.0], [12.0, 0.0, 0.0]])
    f2 = np.array([[1.0, 1.0, 1.0], [0.0, 10.0, 0.0]])
    f3 = np.array([[1.0, 1.0, 3.0], [0.0, 0.0, 10.0]])
    return [f1, f2, f3]


# The 10x10 stabilization demo instance: its spectral radius and the
# distance of a known reference solution, both evaluated with the dense
# eigensolver / direct arithmetic before the library existed.
STAB_DEMO_RHO = 9.139124933985238
STAB_REFERENCE_DISTANCE = 8.0
