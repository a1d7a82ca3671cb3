"""Iterative optimization of the spectral radius over product families.

All methods share one relaxation scheme: compute a leading eigenvector v of
the current member matrix, then replace rows by set members with a better
inner product against v.  Replacing rows this way never moves the spectral
radius the wrong direction, and each iterate comes with certified two-sided
bounds (the best achievable per-row ratios against v).

Methods differ only in which improvable rows they swap per iteration:

* ``simplex-smallest-index`` one row, the first improvable index;
* ``simplex-pivot`` one row, the one with the extremal achievable ratio;
* ``greedy`` every improvable row at once;
* ``selective-greedy`` greedy driven by *selected* eigenvectors (the power
  method's limit from the all-ones start), which is what rules out cycling
  on families with reducible members.

The greedy variant accepts an ``eigenvector_fn`` hook that substitutes an
arbitrary leading eigenvector; it exists so tests and the demo can reproduce
the cycling phenomenon that selected eigenvectors avoid.
"""

from __future__ import annotations

import hashlib
import itertools
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .linalg import (
    PowerConfig,
    PowerIterationError,
    check_matrix,
    check_vector,
    left_eigenvector,
    selected_eigenpair,
    _lower_from_dots,
    _rho_from_vector,
    _upper_from_dots,
)
from .rows import (
    BlendedSet,
    Ellipsoid,
    FiniteSet,
    GraphDegreeSet,
    L1Ball,
    ProductFamily,
    RowSet,
)

__all__ = [
    "OptimizerConfig",
    "TraceRow",
    "IterationTrace",
    "OptimizationResult",
    "greedy_step",
    "selective_greedy",
    "greedy",
    "spectral_simplex",
    "optimize",
    "matrix_signature",
    "detect_cycle",
    "perturb_family",
    "brute_force_optimum",
    "linear_rate_bound",
    "contraction_factor",
]

_METHODS = {
    "selective-greedy": "greedy",
    "greedy": "greedy",
    "simplex-smallest-index": "smallest-index",
    "simplex-pivot": "pivot",
}

STATUS_OPTIMAL = "optimal"
STATUS_BOUND_CERTIFIED = "bound-certified"
STATUS_MAX_ITERS = "max-iters"
STATUS_REDUCIBLE = "reducible-detected"
STATUS_CYCLE = "cycle-detected"


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs shared by all optimization methods.

    Parameters
    ----------
    direction : {'max', 'min'}
    method : str
        One of ``selective-greedy``, ``greedy``, ``simplex-smallest-index``
        (alias ``simplex``), ``simplex-pivot``.
    power : PowerConfig
        Eigenpair computation parameters.
    delta : float
        A row is only replaced when its inner-product improvement against the
        current eigenvector is at least ``delta``; this blocks churn from
        floating-point ties and is the improvement threshold used by cycle
        detection.
    zero_tol : float
        Threshold below which an eigenvector component counts as zero (bound
        conventions, reducibility detection).
    max_outer_iters : int
        Cap on row-update passes.
    reducibility_alpha : float
        Blend weight for the perturbed retry when a maximization stalls with
        a degenerate (partially zero) eigenvector; 0 disables the retry.
    record_iterates : bool
        Keep a copy of every visited matrix on the result.
    record_contraction : bool
        Record the per-iteration contraction factor (needs one extra left
        eigenvector computation per pass).
    """

    direction: str = "max"
    method: str = "selective-greedy"
    power: PowerConfig = field(default_factory=PowerConfig)
    delta: float = 1e-10
    zero_tol: float = 1e-12
    max_outer_iters: int = 1000
    reducibility_alpha: float = 1e-8
    record_iterates: bool = False
    record_contraction: bool = False

    def __post_init__(self):
        if self.direction not in ("max", "min"):
            raise ValueError(f"direction must be 'max' or 'min', got {self.direction!r}")
        if self.method == "simplex":
            object.__setattr__(self, "method", "simplex-smallest-index")
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.delta < 0 or self.zero_tol < 0:
            raise ValueError("delta and zero_tol must be non-negative")
        if self.max_outer_iters < 1:
            raise ValueError("max_outer_iters must be at least 1")
        if not (0.0 <= self.reducibility_alpha < 1.0):
            raise ValueError("reducibility_alpha must be in [0, 1)")


@dataclass(frozen=True)
class TraceRow:
    """One outer iteration: spectral radius, bounds, and what changed."""

    iteration: int
    rho: float
    s_bound: float
    t_bound: float
    rows_changed: tuple[int, ...]
    time_s: float
    contraction: float | None = None


@dataclass
class IterationTrace:
    """Chronological record of the outer iterations."""

    rows: list[TraceRow] = field(default_factory=list)

    def append(self, row: TraceRow) -> None:
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, key):
        return self.rows[key]

    @property
    def rhos(self) -> np.ndarray:
        return np.array([r.rho for r in self.rows])


@dataclass
class OptimizationResult:
    """Outcome of an optimization run.

    ``bounds`` is the pair (t, s): certified lower and upper bounds on the
    family's minimal and maximal spectral radius computed at the reported
    eigenvector.  ``iterations`` counts every outer pass, including the final
    confirming one.  When the reducibility remedy ran, ``rho_perturbed`` and
    ``perturbed_result`` carry the perturbed family's outcome.
    """

    matrix: np.ndarray
    rho: float
    bounds: tuple[float, float]
    trace: IterationTrace
    status: str
    direction: str
    method: str
    eigenvector: np.ndarray
    iterations: int
    rho_perturbed: float | None = None
    perturbed_result: "OptimizationResult | None" = None
    iterates: list[np.ndarray] | None = None


def matrix_signature(A, quantum: float = 1e-12) -> bytes:
    """Content hash of a matrix with entries quantized at ``quantum``."""
    A = np.asarray(A, dtype=float)
    q = np.rint(A / quantum).astype(np.int64)
    h = hashlib.blake2b(digest_size=16)
    h.update(np.int64(A.shape[0]).tobytes())
    h.update(q.tobytes())
    return h.digest()


def detect_cycle(signatures, rhos, delta: float = 1e-10,
                 direction: str = "max") -> bool:
    """Whether the latest iterate closes a cycle.

    True iff the last signature appeared earlier in the run and the objective
    has not improved by more than ``delta`` since that occurrence.  A
    revisited matrix with genuine progress in between is not a cycle.
    """
    signatures = list(signatures)
    rhos = [float(r) for r in rhos]
    if len(signatures) != len(rhos):
        raise ValueError("signatures and rhos must have equal length")
    if len(signatures) < 2:
        return False
    last = signatures[-1]
    for j in range(len(signatures) - 1):
        if signatures[j] == last:
            window = rhos[j:]
            if direction == "max":
                improvement = max(window) - rhos[j]
            else:
                improvement = rhos[j] - min(window)
            if improvement <= delta:
                return True
    return False


def _apply_step(A, v, cand, direction, delta, kind, zero_tol):
    """Swap improvable rows of A for candidates per the method's rule."""
    new_dots = cand @ v
    old_dots = A @ v
    gain = new_dots - old_dots if direction == "max" else old_dots - new_dots
    improvable = np.flatnonzero(gain >= delta)
    if improvable.size == 0:
        return A, ()
    if kind == "greedy":
        chosen = improvable
    elif kind == "smallest-index":
        chosen = improvable[:1]
    else:  # pivot: extremal achievable ratio among improvable rows
        scores = np.empty(improvable.size)
        for pos, i in enumerate(improvable):
            if v[i] > zero_tol:
                scores[pos] = new_dots[i] / v[i]
            elif direction == "max":
                scores[pos] = np.inf if new_dots[i] > 0 else -np.inf
            else:
                scores[pos] = np.inf
        pos = int(np.argmax(scores)) if direction == "max" else int(np.argmin(scores))
        chosen = improvable[pos:pos + 1]
    A_next = A.copy()
    A_next[chosen] = cand[chosen]
    return A_next, tuple(int(i) for i in chosen)


def greedy_step(A, v, family: ProductFamily, direction: str = "max",
                delta: float = 1e-10) -> tuple[np.ndarray, tuple[int, ...]]:
    """One greedy pass: replace every row whose best achievable inner product
    against v improves on the current one by at least ``delta``.

    Returns the updated matrix and the tuple of changed row indices (empty
    when A is already a fixed point for v).
    """
    A = check_matrix(A)
    v = check_vector(v, family.d)
    if A.shape[0] != family.d:
        raise ValueError("matrix size does not match the family")
    cand = family.best_matrix(v, direction)
    return _apply_step(A, v, cand, direction, delta, "greedy", 1e-12)


def _eigen(A, cfg: OptimizerConfig, eigenvector_fn):
    if eigenvector_fn is not None:
        hv = eigenvector_fn(A)
        if hv is not None:
            v = check_vector(hv, A.shape[0])
            nrm = float(np.linalg.norm(v))
            if nrm == 0.0:
                raise ValueError("eigenvector_fn returned a zero vector")
            v = v / nrm
            rho = _rho_from_vector(A + np.eye(A.shape[0]), v, cfg.power.eps) - 1.0
            return v, max(rho, 0.0)
    try:
        pair = selected_eigenpair(A, cfg.power)
    except PowerIterationError as exc:
        # A near-tie between leading eigenvalues can exhaust the budget (the
        # A + I shift makes tiny gaps excruciating).  The last iterate is an
        # accurate direction long before the tolerance is met, and the
        # two-sided bounds are valid for any positive vector, so the outer
        # loop can continue honestly with it.
        v = np.maximum(exc.last_iterate, 0.0)
        v /= float(np.linalg.norm(v))
        rho = _rho_from_vector(A + np.eye(A.shape[0]), v, cfg.power.eps) - 1.0
        return v, max(rho, 0.0)
    return pair.v, pair.rho


def _run(family: ProductFamily, cfg: OptimizerConfig, eigenvector_fn=None,
         initial_matrix=None) -> OptimizationResult:
    d = family.d
    if initial_matrix is not None:
        A = check_matrix(initial_matrix)
        if A.shape[0] != d:
            raise ValueError("initial matrix size does not match the family")
        A = A.copy()
    else:
        A = family.best_matrix(np.ones(d), cfg.direction)
    step_kind = _METHODS[cfg.method]
    sign = 1.0 if cfg.direction == "max" else -1.0
    seen: dict[bytes, float] = {}
    trace = IterationTrace()
    iterates: list[np.ndarray] | None = [] if cfg.record_iterates else None
    best = None   # (A, v, rho, s, t) with the best rho so far
    last = None
    status = None
    for k in range(1, cfg.max_outer_iters + 1):
        t0 = time.perf_counter()
        v, rho = _eigen(A, cfg, eigenvector_fn)
        up = family.best_matrix(v, "max")
        down = family.best_matrix(v, "min")
        s = _upper_from_dots(v, up @ v, cfg.zero_tol)
        t = _lower_from_dots(v, down @ v, cfg.zero_tol)
        if iterates is not None:
            iterates.append(A.copy())
        last = (A, v, rho, s, t)
        if best is None or sign * (rho - best[2]) > 0:
            best = last
        sig = matrix_signature(A)
        prev_rho = seen.get(sig)
        if prev_rho is not None and sign * (rho - prev_rho) <= cfg.delta:
            trace.append(TraceRow(k, rho, s, t, (), time.perf_counter() - t0))
            status = STATUS_CYCLE
            break
        seen[sig] = rho
        cand = up if cfg.direction == "max" else down
        A_next, changed = _apply_step(A, v, cand, cfg.direction, cfg.delta,
                                      step_kind, cfg.zero_tol)
        contraction = None
        if cfg.record_contraction and changed:
            try:
                contraction = contraction_factor(left_eigenvector(A_next, cfg.power), v)
            except (ValueError, PowerIterationError):
                contraction = None
        trace.append(TraceRow(k, rho, s, t, changed,
                              time.perf_counter() - t0, contraction))
        if not changed:
            if cfg.direction == "max" and bool(np.any(v <= cfg.zero_tol)):
                status = STATUS_REDUCIBLE
            else:
                status = STATUS_OPTIMAL
            break
        A = A_next
    if status is None:
        _, _, rho_l, s_l, t_l = last
        gap = (s_l - rho_l) if cfg.direction == "max" else (rho_l - t_l)
        if gap <= 1e-6 * max(1.0, abs(rho_l)):
            status = STATUS_BOUND_CERTIFIED
        else:
            status = STATUS_MAX_ITERS
    src = best if status == STATUS_CYCLE else last
    A_r, v_r, rho_r, s_r, t_r = src
    return OptimizationResult(
        matrix=A_r.copy(), rho=float(rho_r), bounds=(float(t_r), float(s_r)),
        trace=trace, status=status, direction=cfg.direction, method=cfg.method,
        eigenvector=v_r.copy(), iterations=len(trace), iterates=iterates)


def _cycle_anchor(d: int, i: int) -> np.ndarray:
    p = np.zeros(d)
    p[(i + 1) % d] = 1.0
    return p


def perturb_family(family: ProductFamily, alpha: float) -> ProductFamily:
    """Blend every row set with the matching row of a cyclic permutation.

    Each admissible row a of set i becomes (1 - alpha) a + alpha p_i where
    p_i is the unit row pointing at column (i + 1) mod d.  The support of
    every member then contains a full cycle, so every member is irreducible.
    Finite, L1-ball and ellipsoid sets map onto the same variant; the rest
    are wrapped in :class:`BlendedSet`.  ``alpha = 0`` returns the family
    unchanged.
    """
    if not (0.0 <= alpha < 1.0):
        raise ValueError("alpha must be in [0, 1)")
    if alpha == 0.0:
        return family
    d = family.d
    out: list[RowSet] = []
    for i, rs in enumerate(family.sets):
        p = _cycle_anchor(d, i)
        if isinstance(rs, FiniteSet):
            out.append(FiniteSet((1.0 - alpha) * rs.rows + alpha * p))
        elif isinstance(rs, L1Ball):
            out.append(L1Ball((1.0 - alpha) * rs.center + alpha * p,
                              (1.0 - alpha) * rs.radius))
        elif isinstance(rs, Ellipsoid):
            out.append(Ellipsoid((1.0 - alpha) * rs.center + alpha * p,
                                 (1.0 - alpha) * rs.radius, rs.axes))
        else:
            out.append(BlendedSet(rs, alpha, p))
    return ProductFamily(tuple(out))


def _pull_back_matrix(family: ProductFamily, X_pert: np.ndarray,
                      alpha: float) -> np.ndarray:
    """Map a perturbed-family member back onto the original family."""
    d = family.d
    rows = np.empty((d, d))
    for i, rs in enumerate(family.sets):
        raw = (X_pert[i] - alpha * _cycle_anchor(d, i)) / (1.0 - alpha)
        raw = np.maximum(raw, 0.0)
        if isinstance(rs, FiniteSet):
            raw = rs.rows[int(np.argmin(np.max(np.abs(rs.rows - raw), axis=1)))]
        elif isinstance(rs, GraphDegreeSet):
            raw = np.clip(np.rint(raw), 0.0, 1.0)
        rows[i] = raw
    return rows


def _drive(family: ProductFamily, cfg: OptimizerConfig, eigenvector_fn=None,
           initial_matrix=None) -> OptimizationResult:
    res = _run(family, cfg, eigenvector_fn, initial_matrix)
    if res.status != STATUS_REDUCIBLE or cfg.reducibility_alpha == 0.0:
        return res
    # Retry on the perturbed (irreducible) family, then pull its optimum back
    # into the original family and keep the better of the two honest values.
    pert = perturb_family(family, cfg.reducibility_alpha)
    retry = _run(pert, cfg)
    res.rho_perturbed = retry.rho
    res.perturbed_result = retry
    X = _pull_back_matrix(family, retry.matrix, cfg.reducibility_alpha)
    pair = selected_eigenpair(X, cfg.power)
    sign = 1.0 if cfg.direction == "max" else -1.0
    if sign * (pair.rho - res.rho) > 0:
        up = family.best_matrix(pair.v, "max")
        down = family.best_matrix(pair.v, "min")
        res.matrix = X
        res.rho = pair.rho
        res.eigenvector = pair.v
        res.bounds = (float(_lower_from_dots(pair.v, down @ pair.v, cfg.zero_tol)),
                      float(_upper_from_dots(pair.v, up @ pair.v, cfg.zero_tol)))
    return res


def _with_method(config: OptimizerConfig | None, method: str) -> OptimizerConfig:
    if config is None:
        return OptimizerConfig(method=method)
    if config.method != method:
        return replace(config, method=method)
    return config


def selective_greedy(family: ProductFamily, config: OptimizerConfig | None = None,
                     *, initial_matrix=None) -> OptimizationResult:
    """Greedy relaxation driven by selected eigenvectors (never cycles)."""
    cfg = _with_method(config, "selective-greedy")
    return _drive(family, cfg, None, initial_matrix)


def greedy(family: ProductFamily, config: OptimizerConfig | None = None,
           *, eigenvector_fn=None, initial_matrix=None) -> OptimizationResult:
    """Greedy relaxation; ``eigenvector_fn`` may substitute the eigenvector.

    The hook receives the current matrix and returns a non-negative leading
    eigenvector or None to fall back to the selected one.  With adversarial
    eigenvector choices the plain greedy method can cycle on families with
    reducible members; that is exactly what the hook exists to demonstrate.
    """
    cfg = _with_method(config, "greedy")
    return _drive(family, cfg, eigenvector_fn, initial_matrix)


def spectral_simplex(family: ProductFamily, config: OptimizerConfig | None = None,
                     *, initial_matrix=None) -> OptimizationResult:
    """One-row-per-iteration relaxation (smallest-index or pivot rule)."""
    cfg = config or OptimizerConfig(method="simplex-smallest-index")
    if _METHODS[cfg.method] not in ("smallest-index", "pivot"):
        cfg = replace(cfg, method="simplex-smallest-index")
    return _drive(family, cfg, None, initial_matrix)


def optimize(family: ProductFamily, config: OptimizerConfig | None = None,
             *, eigenvector_fn=None, initial_matrix=None) -> OptimizationResult:
    """Dispatch on ``config.method``; the hook is honored by greedy only."""
    cfg = config or OptimizerConfig()
    if eigenvector_fn is not None and cfg.method != "greedy":
        raise ValueError("eigenvector_fn is only honored by the greedy method")
    return _drive(family, cfg, eigenvector_fn, initial_matrix)


def brute_force_optimum(family: ProductFamily, direction: str = "max",
                        max_members: int = 1_000_000) -> tuple[np.ndarray, float]:
    """Exact optimum by enumerating every member of a finite family.

    All row sets must be :class:`FiniteSet` and the member count must not
    exceed ``max_members``.  Spectral radii are computed with a dense
    eigenvalue solver, which keeps this route independent of the iterative
    methods it serves as an oracle for.  Ties keep the first member in
    lexicographic row-index order.
    """
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    sizes = []
    for i, rs in enumerate(family.sets):
        if not isinstance(rs, FiniteSet):
            raise TypeError(f"sets[{i}] is not finite; brute force needs finite sets")
        sizes.append(rs.size)
    total = int(np.prod([float(n) for n in sizes]))
    if float(np.prod([float(n) for n in sizes])) > max_members:
        raise ValueError(f"family has more than {max_members} members")
    d = family.d
    sign = 1.0 if direction == "max" else -1.0
    best_rho = -np.inf
    best_idx = None
    chunk = 4096
    combos = itertools.product(*[range(n) for n in sizes])
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        idx = np.array(block, dtype=int)
        M = np.empty((idx.shape[0], d, d))
        for i in range(d):
            M[:, i, :] = family.sets[i].rows[idx[:, i]]
        radii = np.abs(np.linalg.eigvals(M)).max(axis=1)
        pos = int(np.argmax(sign * radii))
        if sign * radii[pos] > best_rho:
            best_rho = sign * radii[pos]
            best_idx = idx[pos]
    assert best_idx is not None and total > 0
    A = np.vstack([family.sets[i].rows[best_idx[i]] for i in range(d)])
    return A, float(sign * best_rho)


def linear_rate_bound(family: ProductFamily) -> float:
    """Upper bound q on the linear convergence rate of the greedy method.

    q = 1 - m^2 / (m^2 + (d - 1) M^2) with m, M the smallest and largest
    entry over all admissible rows.  Only meaningful for strictly positive
    families (m > 0); raises ValueError otherwise.
    """
    d = family.d
    lo = np.inf
    hi = -np.inf
    for rs in family.sets:
        m_i, M_i = rs.entry_range()
        lo = min(lo, m_i)
        hi = max(hi, M_i)
    if not (np.isfinite(lo) and lo > 0):
        raise ValueError("linear rate bound requires strictly positive rows")
    if d == 1:
        return 0.0
    return 1.0 - lo ** 2 / (lo ** 2 + (d - 1) * hi ** 2)


def contraction_factor(u_next, v_k) -> float:
    """Observed one-step contraction 1 - max_j (u_j v_j) / (u, v).

    ``u_next`` is a left leading eigenvector of the *updated* matrix and
    ``v_k`` the eigenvector the step was taken against.  Raises ValueError
    on a degenerate pair ((u, v) <= 0)."""
    u = check_vector(u_next)
    v = check_vector(v_k, u.shape[0])
    dot = float(u @ v)
    if dot <= 0.0:
        raise ValueError("degenerate eigenvector pair")
    return 1.0 - float(np.max(u * v)) / dot
