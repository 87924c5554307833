"""
Tests for the finite-difference so(2,1) representation
"""
import numpy as np
import pytest

from app.core.config import settings
from app.core.exceptions import UsageError
from app.schemas.grid import GridOperator, RadialGrid, TestFunctionSet
from app.services.grid_operator_service import MIN_OPERATOR_POINTS, grid_operator_service
from app.services.wavefunction_service import wavefunction_service


@pytest.fixture(scope="module")
def generators(canonical_grid):
    """sigma = 1, tau = 2: the canonical ground-state representation"""
    return grid_operator_service.build_generators(canonical_grid, 1.0, 2.0, 1.0)


def test_canonical_grid(canonical_grid):
    assert canonical_grid.size == settings.OPERATOR_GRID_POINTS
    assert canonical_grid.points[0] == pytest.approx(0.01)
    assert canonical_grid.points[-1] == pytest.approx(40.0)


def test_derivative_exact_on_quartic(canonical_grid):
    r = canonical_grid.points
    D = grid_operator_service.derivative_matrix(canonical_grid)
    np.testing.assert_allclose(D @ r ** 4, 4.0 * r ** 3, rtol=1e-9, atol=1e-9)


def test_derivative_on_log_grid():
    grid = RadialGrid.log_uniform(0.01, 10.0, 2000)
    r = grid.points
    D = grid_operator_service.derivative_matrix(grid)
    np.testing.assert_allclose(D @ np.sin(r), np.cos(r), atol=1e-6)


def test_derivative_rejects_small_and_explicit_grids():
    with pytest.raises(UsageError):
        grid_operator_service.derivative_matrix(RadialGrid.uniform(0.1, 1.0, MIN_OPERATOR_POINTS - 1))
    explicit = RadialGrid(points=np.cumsum(np.linspace(0.01, 0.02, 100)))
    with pytest.raises(UsageError):
        grid_operator_service.derivative_matrix(explicit)


def test_position_operator_is_diagonal(canonical_grid):
    R, _ = grid_operator_service.build_observables(canonical_grid, 1.0)
    np.testing.assert_allclose(R(np.ones(canonical_grid.size)), canonical_grid.points)


def test_structural_identities(generators):
    assert abs(generators.T1.matrix - (generators.T3 - generators.R).matrix).max() == 0


def test_T3_eigenrelation_on_test_state(generators, canonical_grid):
    r = canonical_grid.points
    f = r ** 2 * np.exp(-r)
    assert grid_operator_service.eigen_residual(generators.T3, f, 2.0) < 1e-5
    assert grid_operator_service.eigen_residual(generators.T3, f, 0.0) > 0.5


@pytest.mark.parametrize("name", list(grid_operator_service.relations()))
def test_commutation_relations(generators, name):
    assert grid_operator_service.relation_residual(name, generators) < settings.TOL_ALGEBRA


def test_casimir_forms(generators, canonical_grid):
    tests = grid_operator_service.default_test_functions(canonical_grid)
    for value in grid_operator_service.casimir_form_residuals(generators, tests).values():
        assert value < settings.TOL_ALGEBRA


def test_ground_state_annihilated_and_casimir(canonical, generators, canonical_grid):
    f0 = wavefunction_service.ground_state(canonical, 0).f(canonical_grid.points)
    assert grid_operator_service.annihilation_residual(generators.Tminus, f0) < settings.TOL_ALGEBRA
    assert grid_operator_service.eigen_residual(generators.Casimir, f0, 2.0) < settings.TOL_ALGEBRA


@pytest.mark.parametrize("n", [0, 1, 2])
def test_T3_per_state_sigma(canonical, canonical_grid, n):
    gens = grid_operator_service.generators_for_state(canonical, n, 0, canonical_grid)
    f = wavefunction_service.state(canonical, n, 0).f(canonical_grid.points)
    assert grid_operator_service.eigen_residual(gens.T3, f, 2.0 + n) < settings.TOL_ALGEBRA


@pytest.mark.parametrize("n", [0, 1])
def test_ladder_common_sigma(canonical_grid, n):
    assert grid_operator_service.ladder_residual(2.0, 1.0, n, canonical_grid, 1.0) < settings.TOL_LADDER


def test_convergence_order():
    order, coarse, fine = grid_operator_service.convergence_order("[T1,T2]=-i*hbar*T3")
    assert fine < coarse
    assert order > settings.MIN_CONVERGENCE_ORDER


def test_interior_mask(canonical_grid):
    mask = grid_operator_service.interior_mask(canonical_grid)
    assert mask.sum() == canonical_grid.size - 2 * 200
    assert not mask[199] and mask[200] and mask[-201] and not mask[-200]


def test_test_functions_must_vanish_at_edges(canonical_grid):
    with pytest.raises(UsageError, match="vanish"):
        TestFunctionSet(grid=canonical_grid).add("r^2 exp(-r)", lambda r: r ** 2 * np.exp(-r))
    assert len(grid_operator_service.default_test_functions(canonical_grid).functions) == 4


def test_operators_on_different_grids(generators):
    other = RadialGrid.uniform(0.01, 40.0, 3999)
    with pytest.raises(UsageError, match="different grids"):
        generators.R @ GridOperator.identity(other)
    with pytest.raises(UsageError):
        generators.R(np.ones(10))


def test_unknown_relation(generators):
    with pytest.raises(UsageError, match="unknown relation"):
        grid_operator_service.relation_residual("[A,B]=C", generators)


def test_operator_grid_widens_for_deep_wells(canonical):
    from app.schemas.kratzer import KratzerParams

    assert grid_operator_service.operator_grid_for(canonical, 0).points[-1] == pytest.approx(40.0)
    deep = KratzerParams(alpha=-200.0, beta=5000.0, mu=10.0)
    grid = grid_operator_service.operator_grid_for(deep, 0)
    state = wavefunction_service.ground_state(deep, 0)
    # envelope peak r = q0 sigma well inside the grid
    assert grid.points[-1] > 1.2 * state.q0 * state.sigma
