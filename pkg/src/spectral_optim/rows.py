"""Row uncertainty sets and product families of non-negative matrices.

A product family is a set of d x d matrices assembled row by row: row i is
drawn independently from its own uncertainty set F_i of non-negative
d-vectors.  Because the rows decouple, optimizing the spectral radius over
the family reduces to repeatedly answering one question per row: which member
of F_i maximizes (or minimizes) the inner product with a given non-negative
direction v?  Each set variant implements that oracle exactly:

* :class:`FiniteSet` scans an explicit list of rows.
* :class:`GraphDegreeSet` is the 0/1 rows with a row-sum constraint; the
  optimum puts ones on the largest (or smallest) components of v.
* :class:`L1Ball` moves budget from a non-negative center row; the maximum
  spends everything on the single best coordinate, the minimum removes mass
  from the most expensive coordinates first.
* :class:`HalfspacePoly` is a polytope cut from the unit box by non-negative
  halfspaces; the oracle is a small LP solved to a vertex.
* :class:`Ellipsoid` is an axis-aligned ellipsoid strictly inside the
  positive orthant, with a closed-form touching point.

Ties are broken deterministically toward the lowest index so that runs are
reproducible (the LP-backed variant inherits determinism from Bland's rule).
"""

from __future__ import annotations

import abc
from dataclasses import dataclass

import numpy as np

from .linalg import check_vector
from .lp import LinearProgram, lp_optimize

__all__ = [
    "RowSet",
    "FiniteSet",
    "GraphDegreeSet",
    "L1Ball",
    "HalfspacePoly",
    "Ellipsoid",
    "BlendedSet",
    "ProductFamily",
    "best_row",
]


def _check_direction(direction: str) -> None:
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")


class RowSet(abc.ABC):
    """A set of admissible non-negative rows of fixed length."""

    @property
    @abc.abstractmethod
    def d(self) -> int:
        """Ambient row length."""

    def best_row(self, v, direction: str = "max") -> np.ndarray:
        """Row of the set with extremal inner product against v.

        ``v`` must be non-negative and nonzero.  Ties are resolved
        deterministically (lowest index wins).
        """
        v = check_vector(v, self.d)
        _check_direction(direction)
        if not np.any(v > 0.0):
            raise ValueError("degenerate objective: v has no positive component")
        return self._best_row(v, direction)

    @abc.abstractmethod
    def _best_row(self, v: np.ndarray, direction: str) -> np.ndarray: ...

    @abc.abstractmethod
    def contains(self, x, tol: float = 1e-9) -> bool:
        """Whether x belongs to the set up to tolerance tol."""

    @abc.abstractmethod
    def entry_range(self) -> tuple[float, float]:
        """Smallest and largest entry value over all rows and coordinates."""


@dataclass(frozen=True, eq=False)
class FiniteSet(RowSet):
    """An explicit finite list of non-negative rows (N x d array)."""

    rows: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rows, dtype=float)
        if r.ndim != 2 or r.shape[0] < 1 or r.shape[1] < 1:
            raise ValueError(f"rows must be a non-empty 2-D array, got shape {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValueError("rows must be finite")
        if np.any(r < 0):
            raise ValueError("rows must be non-negative")
        object.__setattr__(self, "rows", r)

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    @property
    def size(self) -> int:
        return self.rows.shape[0]

    def _best_row(self, v, direction):
        dots = self.rows @ v
        idx = int(np.argmax(dots)) if direction == "max" else int(np.argmin(dots))
        return self.rows[idx].copy()

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.any(np.max(np.abs(self.rows - x), axis=1) <= tol))

    def entry_range(self):
        return float(self.rows.min()), float(self.rows.max())


@dataclass(frozen=True)
class GraphDegreeSet(RowSet):
    """0/1 rows of length d with row sum <= n ('at_most') or >= n ('at_least').

    Models one vertex of a directed graph whose out-edges are free subject to
    a prescribed degree budget.
    """

    dim: int
    n: int
    sense: str = "at_most"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not (1 <= self.n <= self.dim):
            raise ValueError(f"need 1 <= n <= dim, got n={self.n}, dim={self.dim}")
        if self.sense not in ("at_most", "at_least"):
            raise ValueError(f"sense must be 'at_most' or 'at_least', got {self.sense!r}")

    @property
    def d(self) -> int:
        return self.dim

    def _best_row(self, v, direction):
        row = np.zeros(self.dim)
        if direction == "max":
            if self.sense == "at_least":
                return np.ones(self.dim)
            # ones on the n largest components; stable sort keeps ties in
            # index order
            top = np.argsort(-v, kind="stable")[: self.n]
            row[top] = 1.0
            return row
        if self.sense == "at_most":
            return row
        low = np.argsort(v, kind="stable")[: self.n]
        row[low] = 1.0
        return row

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            return False
        r = np.rint(x)
        if np.max(np.abs(x - r)) > tol or np.any((r != 0.0) & (r != 1.0)):
            return False
        total = int(r.sum())
        return total <= self.n if self.sense == "at_most" else total >= self.n

    def entry_range(self):
        lo = 1.0 if (self.sense == "at_least" and self.n == self.dim) else 0.0
        hi = 0.0 if (self.sense == "at_most" and self.n == 0) else 1.0
        return lo, hi


@dataclass(frozen=True, eq=False)
class L1Ball(RowSet):
    """Rows within L1 distance ``radius`` of a non-negative center row,
    intersected with the non-negative orthant."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = check_vector(self.center)
        if not (np.isfinite(self.radius) and self.radius >= 0):
            raise ValueError("radius must be finite and non-negative")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def d(self) -> int:
        return self.center.shape[0]

    def _best_row(self, v, direction):
        x = self.center.copy()
        if direction == "max":
            # The whole budget on the single most valuable coordinate is
            # optimal: objective gain is linear in each coordinate's share.
            x[int(np.argmax(v))] += self.radius
            return x
        budget = self.radius
        for j in np.argsort(-v, kind="stable"):
            if v[j] <= 0.0 or budget <= 0.0:
                break
            cut = min(x[j], budget)
            x[j] -= cut
            budget -= cut
        return x

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,) or np.any(x < -tol):
            return False
        return bool(np.sum(np.abs(x - self.center)) <= self.radius + tol)

    def entry_range(self):
        lo = float(np.min(np.maximum(self.center - self.radius, 0.0)))
        hi = float(np.max(self.center + self.radius))
        return lo, hi


@dataclass(frozen=True, eq=False)
class HalfspacePoly(RowSet):
    """{x : 0 <= x <= 1, (normal_j, x) <= 1 for every j} with normals >= 0."""

    normals: np.ndarray

    def __post_init__(self):
        nm = np.asarray(self.normals, dtype=float)
        if nm.ndim != 2 or nm.shape[1] < 1:
            raise ValueError(f"normals must be a 2-D array, got shape {nm.shape}")
        if not np.all(np.isfinite(nm)):
            raise ValueError("normals must be finite")
        if np.any(nm < 0):
            raise ValueError("normals must be non-negative")
        object.__setattr__(self, "normals", nm)

    @property
    def d(self) -> int:
        return self.normals.shape[1]

    def _best_row(self, v, direction):
        lp = LinearProgram(
            objective=v,
            normals=self.normals,
            rhs=np.ones(self.normals.shape[0]),
            lo=np.zeros(self.d),
            hi=np.ones(self.d),
            sense=direction,
        )
        x, _ = lp_optimize(lp)
        return np.maximum(x, 0.0)

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,):
            return False
        if np.any(x < -tol) or np.any(x > 1.0 + tol):
            return False
        return bool(np.all(self.normals @ x <= 1.0 + tol))

    def entry_range(self):
        return 0.0, 1.0


@dataclass(frozen=True, eq=False)
class Ellipsoid(RowSet):
    """Axis-aligned ellipsoid {center + radius * diag(axes) u : ||u||_2 <= 1}
    strictly inside the positive orthant (center_i - radius * axes_i > 0)."""

    center: np.ndarray
    radius: float
    axes: np.ndarray

    def __post_init__(self):
        c = check_vector(self.center)
        a = np.asarray(self.axes, dtype=float)
        if a.shape != c.shape:
            raise ValueError("axes must match center length")
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise ValueError("axes must be finite and positive")
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ValueError("radius must be finite and positive")
        if np.any(c - self.radius * a <= 0):
            raise ValueError("ellipsoid must lie strictly inside the positive orthant")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "axes", a)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def d(self) -> int:
        return self.center.shape[0]

    def _best_row(self, v, direction):
        # Maximize (v, c + r D u) over ||u|| <= 1 with D = diag(axes): the
        # optimal u is Dv normalized, so the step is r * axes^2 * v scaled by
        # 1 / ||axes * v||.
        w = self.axes * v
        step = self.radius * self.axes * w / float(np.linalg.norm(w))
        return self.center + step if direction == "max" else self.center - step

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,) or np.any(x < -tol):
            return False
        u = (x - self.center) / (self.radius * self.axes)
        return bool(np.linalg.norm(u) <= 1.0 + tol)

    def entry_range(self):
        lo = float(np.min(self.center - self.radius * self.axes))
        hi = float(np.max(self.center + self.radius * self.axes))
        return lo, hi


@dataclass(frozen=True, eq=False)
class BlendedSet(RowSet):
    """Rows of an inner set convexly blended with a fixed anchor row:
    {(1 - weight) * a + weight * anchor : a in inner}.

    Used to make every member of a family irreducible by mixing in a cyclic
    permutation row; variants that are not closed under the blend are wrapped
    in this adapter.
    """

    inner: RowSet
    weight: float
    anchor: np.ndarray

    def __post_init__(self):
        if not (0.0 <= self.weight < 1.0):
            raise ValueError("weight must be in [0, 1)")
        anchor = check_vector(self.anchor, self.inner.d)
        object.__setattr__(self, "anchor", anchor)
        object.__setattr__(self, "weight", float(self.weight))

    @property
    def d(self) -> int:
        return self.inner.d

    def _best_row(self, v, direction):
        # The anchor term is constant over the set, so the blend of the inner
        # optimum is the blended set's optimum.
        a = self.inner.best_row(v, direction)
        return (1.0 - self.weight) * a + self.weight * self.anchor

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,):
            return False
        a = (x - self.weight * self.anchor) / (1.0 - self.weight)
        return self.inner.contains(a, tol / (1.0 - self.weight))

    def entry_range(self):
        lo, hi = self.inner.entry_range()
        w = self.weight
        return (
            (1.0 - w) * lo + w * float(self.anchor.min()),
            (1.0 - w) * hi + w * float(self.anchor.max()),
        )


@dataclass(frozen=True, eq=False)
class ProductFamily:
    """Square-matrix family with one independent row uncertainty set per row."""

    sets: tuple[RowSet, ...]

    def __post_init__(self):
        sets = tuple(self.sets)
        if not sets:
            raise ValueError("family needs at least one row set")
        d = len(sets)
        for i, rs in enumerate(sets):
            if not isinstance(rs, RowSet):
                raise TypeError(f"sets[{i}] is not a RowSet")
            if rs.d != d:
                raise ValueError(
                    f"sets[{i}] has row length {rs.d}, expected {d} "
                    "(one set per row of a square matrix)")
        object.__setattr__(self, "sets", sets)

    @property
    def d(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def best_matrix(self, v, direction: str = "max") -> np.ndarray:
        """Matrix assembled from each set's best row against v."""
        return np.vstack([rs.best_row(v, direction) for rs in self.sets])

    def contains_matrix(self, A, tol: float = 1e-9) -> bool:
        A = np.asarray(A, dtype=float)
        if A.shape != (self.d, self.d):
            return False
        return all(rs.contains(A[i], tol) for i, rs in enumerate(self.sets))


def best_row(row_set: RowSet, v, direction: str = "max") -> np.ndarray:
    """Functional alias for :meth:`RowSet.best_row`."""
    return row_set.best_row(v, direction)
