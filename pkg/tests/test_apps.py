"""Application tests: extremal graphs and closest stable/unstable matrices.

Closed-form cases carry the expected values in the test (single entries,
circulants, diagonal matrices); the 7-vertex degree sequence and the 10 x 10
stabilization example are checked against the radii recomputed by the dense
eigenvalue oracle in oracles.py.
"""

import numpy as np
import pytest

from oracles import STAB_DEMO_RHO, STAB_REFERENCE_DISTANCE, eig_rho

from spectral_optim.apps import (
    DegreeSpec,
    StabilizationProblem,
    closest_stable,
    closest_unstable,
    degree_family,
    optimize_graph,
    stabilization_family,
)
from spectral_optim.rows import GraphDegreeSet, L1Ball
from spectral_optim import demo


# -------------------------------------------------------------------- graphs

def test_degree_family_builds_matching_row_sets():
    fam = degree_family(DegreeSpec((2, 1, 3)))
    assert all(isinstance(rs, GraphDegreeSet) for rs in fam.sets)
    assert [rs.n for rs in fam.sets] == [2, 1, 3]
    assert all(rs.sense == "at_most" for rs in fam.sets)
    fam = degree_family(DegreeSpec((2, 1, 3), direction="min"))
    assert all(rs.sense == "at_least" for rs in fam.sets)


def test_degree_spec_validation():
    with pytest.raises(ValueError):
        DegreeSpec(())
    with pytest.raises(ValueError):
        DegreeSpec((1, 4, 1))
    with pytest.raises(ValueError):
        DegreeSpec((1, 0, 1))
    with pytest.raises(ValueError):
        DegreeSpec((1, 1), direction="up")


def test_seven_vertex_degree_sequence():
    adjacency, rho = optimize_graph(DegreeSpec(demo.DEMO_DEGREES))
    assert rho == pytest.approx(3.21432, abs=1e-4)
    assert rho == pytest.approx(eig_rho(adjacency), abs=1e-8)
    assert np.array_equal(adjacency, adjacency.astype(bool).astype(float))
    np.testing.assert_array_equal(adjacency.sum(axis=1), demo.DEMO_DEGREES)


def test_uniform_degree_extremes():
    adjacency, rho = optimize_graph(DegreeSpec((1, 1, 1, 1, 1)))
    assert rho == 1.0
    np.testing.assert_array_equal(adjacency.sum(axis=1), np.ones(5))

    d = 4
    adjacency, rho = optimize_graph(DegreeSpec((d,) * d))
    assert rho == float(d)
    np.testing.assert_array_equal(adjacency, np.ones((d, d)))


def test_min_direction_uses_exact_degrees():
    adjacency, rho = optimize_graph(DegreeSpec((2, 1, 2, 1), direction="min"))
    np.testing.assert_array_equal(adjacency.sum(axis=1), [2, 1, 2, 1])
    # every function graph contains a cycle, so the radius cannot drop below 1
    assert rho >= 1.0 - 1e-9
    assert rho <= 2.0 + 1e-9


def test_random_degree_specs_respect_row_sum_bound():
    rng = np.random.default_rng(31)
    for _ in range(10):
        d = int(rng.integers(2, 8))
        degrees = tuple(int(rng.integers(1, d + 1)) for _ in range(d))
        adjacency, rho = optimize_graph(DegreeSpec(degrees))
        np.testing.assert_array_equal(adjacency.sum(axis=1), degrees)
        assert rho <= max(degrees) + 1e-9
        assert rho == pytest.approx(eig_rho(adjacency), abs=1e-7)


# ------------------------------------------------------------- stabilization

def test_stabilization_family_is_l1_balls_around_rows():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    fam = stabilization_family(A, 0.25)
    assert all(isinstance(rs, L1Ball) for rs in fam.sets)
    np.testing.assert_array_equal(fam.sets[0].center, A[0])
    np.testing.assert_array_equal(fam.sets[1].center, A[1])
    assert fam.sets[0].radius == 0.25


def test_stabilization_problem_validation():
    with pytest.raises(ValueError):
        StabilizationProblem(np.ones((2, 3)))
    with pytest.raises(ValueError):
        StabilizationProblem(np.eye(2), target=-1.0)
    with pytest.raises(ValueError):
        StabilizationProblem(np.eye(2), r_tol=0.0)


def test_closest_stable_scalar():
    X, r = closest_stable(StabilizationProblem(np.array([[2.0]])))
    assert r == pytest.approx(1.0, abs=3e-6)
    assert X[0, 0] == pytest.approx(1.0, abs=3e-6)
    assert X[0, 0] <= 1.0 + 1e-6


def test_closest_stable_returns_input_when_already_stable():
    A = 0.5 * np.eye(2)
    X, r = closest_stable(StabilizationProblem(A))
    assert r == 0.0
    np.testing.assert_array_equal(X, A)


def test_closest_stable_circulant():
    A = np.array([[0.0, 2.0, 0.0],
                  [0.0, 0.0, 2.0],
                  [2.0, 0.0, 0.0]])
    problem = StabilizationProblem(A)
    X, r = closest_stable(problem)
    # each row sheds weight at rate 1, so the critical radius is exactly 1
    assert r == pytest.approx(1.0, abs=3e-6)
    assert eig_rho(X) <= 1.0 + 1e-6
    assert np.all(X >= 0.0)
    assert np.max(np.abs(X - A).sum(axis=1)) <= r + 1e-9
    # a visibly smaller ball cannot reach the target
    from spectral_optim.optimize import OptimizerConfig, selective_greedy
    short = selective_greedy(stabilization_family(A, 0.99),
                             OptimizerConfig(direction="min"))
    assert short.rho > 1.0 + 1e-6


def test_closest_stable_generalized_target():
    X, r = closest_stable(StabilizationProblem(np.array([[3.0]]), target=2.0))
    assert r == pytest.approx(1.0, abs=3e-6)
    assert X[0, 0] <= 2.0 + 1e-6


def test_closest_stable_ten_by_ten_demo():
    A = demo.unstable_demo_matrix()
    assert eig_rho(A) == pytest.approx(STAB_DEMO_RHO, abs=1e-9)
    X, r = closest_stable(StabilizationProblem(A))
    assert eig_rho(X) <= 1.0 + 1e-6
    assert np.all(X >= 0.0)
    assert np.max(np.abs(X - A).sum(axis=1)) <= r + 1e-9
    assert r <= STAB_REFERENCE_DISTANCE + 1e-3


def test_closest_unstable_scalar_zero():
    X, r = closest_unstable(StabilizationProblem(np.array([[0.0]])))
    assert r == pytest.approx(1.0, abs=3e-6)
    assert eig_rho(X) >= 1.0 - 1e-5


def test_closest_unstable_diagonal_and_monotonicity():
    _, r_half = closest_unstable(StabilizationProblem(0.5 * np.eye(2)))
    assert r_half == pytest.approx(0.5, abs=3e-6)
    _, r_nine = closest_unstable(StabilizationProblem(0.9 * np.eye(2)))
    assert r_nine == pytest.approx(0.1, abs=3e-6)
    assert r_nine < r_half


def test_closest_unstable_returns_input_when_already_unstable():
    A = np.array([[2.0]])
    X, r = closest_unstable(StabilizationProblem(A))
    assert r == 0.0
    np.testing.assert_array_equal(X, A)
