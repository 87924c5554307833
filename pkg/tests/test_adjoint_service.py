"""
Tests for the adjoint representation and selection rules
"""
import numpy as np
import pytest

from app.core.exceptions import DomainError
from app.schemas.adjoint import CoordinateCommutatorTable
from app.services.adjoint_service import METRIC, adjoint_service, commutator


def test_generator_axis_3():
    np.testing.assert_array_equal(adjoint_service.adjoint_generator(3), [[0, -1, 0], [1, 0, 0], [0, 0, 0]])


def test_generator_rejects_axis():
    with pytest.raises(DomainError):
        adjoint_service.adjoint_generator(4)


def test_generator_copies_are_independent():
    t = adjoint_service.adjoint_generator(1)
    t[0, 0] = 7
    assert adjoint_service.adjoint_generator(1)[0, 0] == 0


def test_closure_is_exact():
    assert adjoint_service.closure_residuals() == {"[T1,T2]=-T3": 0, "[T2,T3]=T1": 0, "[T3,T1]=T2": 0}


def test_metric_preserved():
    assert set(adjoint_service.metric_residuals().values()) == {0}
    t2 = adjoint_service.adjoint_generator(2)
    assert np.array_equal(t2.T @ METRIC, -(METRIC @ t2))


def test_commutator_helper():
    t1, t2, t3 = (adjoint_service.adjoint_generator(a) for a in (1, 2, 3))
    np.testing.assert_array_equal(commutator(t1, t2), -t3)


def test_table_matches_generators():
    assert adjoint_service.table_structure_residual() == 0
    assert adjoint_service.first_order_action_residual() < 1e-9


def test_finite_transformation():
    np.testing.assert_array_equal(adjoint_service.finite_transformation(0.0, 2), np.eye(3))
    with pytest.raises(DomainError):
        adjoint_service.finite_transformation(1.0, 1)


@pytest.mark.parametrize("axis", [1, 2, 3])
def test_exponential_deviation_second_order(axis):
    small = adjoint_service.exponential_deviation(1e-3, axis)
    assert 0 < small < 1e-6
    assert adjoint_service.exponential_deviation(2e-3, axis) / small == pytest.approx(4.0, rel=1e-2)


def test_selection_rules():
    rules = adjoint_service.selection_rules()
    assert rules.per_coordinate == {"x": [-1, 1], "y": [-1, 1], "z": [0]}
    assert rules.allowed == [-1, 0, 1]


def test_selection_rules_of_trivial_table():
    zero = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    table = CoordinateCommutatorTable(coeffs={1: zero, 2: zero, 3: zero})
    assert adjoint_service.selection_rules(table).allowed == [0]


def test_selection_rules_of_doubled_table():
    # [T3, x] = 2y, [T3, y] = -2x
    base = adjoint_service.coordinate_commutators().coeffs
    table = CoordinateCommutatorTable(coeffs={1: base[1], 2: base[2], 3: [[0, 2, 0], [-2, 0, 0], [0, 0, 0]]})
    rules = adjoint_service.selection_rules(table)
    assert rules.per_coordinate == {"x": [-2, 2], "y": [-2, 2], "z": [0]}
    assert rules.allowed == [-2, 0, 2]


def test_rendered_commutators():
    rendered = adjoint_service.coordinate_commutators(with_prefactor=True).rendered(1.0)
    assert rendered["[T3,x]"] == "i*1*y"
    assert rendered["[T3,y]"] == "-i*1*x"
    assert rendered["[T3,z]"] == "0"
    assert adjoint_service.coordinate_commutators().rendered()["[T1,y]"] == "z"
