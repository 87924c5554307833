"""
Tests for the finite-difference eigensolver used as ground truth
"""
import numpy as np
import pytest

from app.core.exceptions import BoxTooSmallError, DomainError, UsageError
from app.schemas.oracle import GridSpec
from app.schemas.requests import ModelInput
from app.services.molecule_service import molecule_service
from app.services.oracle_service import node_count, oracle_cache, oracle_service
from app.services.spectrum_service import spectrum_service

pytestmark = pytest.mark.slow


def test_canonical_energies(canonical, clear_oracle_cache):
    result = oracle_service.solve_bound_states(canonical, 0, 3)
    assert result.energies == pytest.approx([-0.5, -2.0 / 9.0, -0.125], rel=1e-6)
    assert [node_count(state) for state in result.states] == [0, 1, 2]


def test_coulomb_energies(coulomb, clear_oracle_cache):
    result = oracle_service.solve_bound_states(coulomb, 0, 2)
    assert result.energies == pytest.approx([-0.5, -0.125], rel=1e-5)


def test_comparison_with_closed_form(canonical, clear_oracle_cache):
    table = spectrum_service.spectrum_table(canonical, 2, 0)
    report = oracle_service.compare_spectrum(table, oracle_service.solve_bound_states(canonical, 0, 3), canonical)
    assert report.passed
    for row in report.rows:
        assert row.relative_error < 1e-6
        assert row.overlap_deficit < 1e-6


def test_rotational_level(canonical, clear_oracle_cache):
    result = oracle_service.solve_bound_states(canonical, 1, 1)
    assert result.energies[0] == pytest.approx(spectrum_service.energy(canonical, 0, 1), rel=1e-6)


def test_results_are_cached(canonical, clear_oracle_cache):
    first = oracle_service.solve_bound_states(canonical, 0, 2)
    assert len(oracle_cache) == 1
    assert oracle_service.solve_bound_states(canonical, 0, 2) is first


def test_box_too_small(canonical, clear_oracle_cache):
    with pytest.raises(BoxTooSmallError) as err:
        oracle_service.solve_bound_states(canonical, 0, 3, GridSpec(r_max=3.0, points=2000))
    assert err.value.suggested_r_max == pytest.approx(oracle_service.coverage_r_max(canonical, 0, 3))
    assert err.value.suggested_r_max > 6.0
    assert err.value.found < 3


def test_invalid_requests(canonical):
    with pytest.raises(DomainError):
        oracle_service.solve_bound_states(canonical, 0, 0)
    with pytest.raises(DomainError):
        oracle_service.resolve_grid(canonical, 0, 1, GridSpec(r_min=2.0, r_max=1.0))


def test_compare_rejects_mismatched_rows(canonical, clear_oracle_cache):
    result = oracle_service.solve_bound_states(canonical, 0, 1, GridSpec(points=4000))
    with pytest.raises(UsageError):
        oracle_service.compare_spectrum(spectrum_service.spectrum_table(canonical, 0, 1)[1:], result, canonical)
    with pytest.raises(UsageError, match="no partner"):
        oracle_service.compare_spectrum(spectrum_service.spectrum_table(canonical, 1, 0), result, canonical)


def test_resolve_grid_defaults(canonical):
    box = oracle_service.resolve_grid(canonical, 0, 3)
    assert box.r_min == pytest.approx(1e-4)
    assert box.r_max == pytest.approx(60.0 * 2.0)
    assert box.points == 20000


def test_corrupted_energy_flags_only_that_row(canonical, clear_oracle_cache):
    table = spectrum_service.spectrum_table(canonical, 2, 0)
    table[1] = table[1].model_copy(update={"energy": table[1].energy + 1e-3})
    report = oracle_service.compare_spectrum(table, oracle_service.solve_bound_states(canonical, 0, 3), canonical)
    assert not report.passed
    assert [row.n for row in report.failed_rows] == [1]


def test_halving_spacing_keeps_extrapolated_energies(canonical, clear_oracle_cache):
    box = oracle_service.resolve_grid(canonical, 0, 3)
    coarse = oracle_service.solve_bound_states(canonical, 0, 3, box)
    fine = oracle_service.solve_bound_states(canonical, 0, 3, box.model_copy(update={"points": 2 * box.points + 1}))
    np.testing.assert_allclose(fine.energies, coarse.energies, rtol=1e-8)


def test_ground_energy_decreases_as_box_grows(canonical, clear_oracle_cache):
    # Fixed spacing: each box's grid contains the previous one
    h, r_min = 0.01, 1e-4
    raw = []
    for points in (400, 800, 1600, 3200):
        box = GridSpec(r_min=r_min, r_max=r_min + h * (points + 1), points=points)
        raw.append(oracle_service.solve_bound_states(canonical, 0, 1, box).raw_energies[0])
    assert all(later <= earlier + 1e-12 for earlier, later in zip(raw, raw[1:]))
    assert raw[0] > raw[-1]
    assert raw[-1] == pytest.approx(-0.5, abs=1e-4)


def test_states_are_read_only(canonical, clear_oracle_cache):
    result = oracle_service.solve_bound_states(canonical, 0, 1, GridSpec(points=4000))
    with pytest.raises(ValueError):
        result.states[0, 0] = 1.0


def test_default_box_reaches_deep_well(clear_oracle_cache):
    p = molecule_service.resolve_model(ModelInput(molecule="CO"))
    box = oracle_service.resolve_grid(p, 0, 3)
    assert box.r_max > 1.2 * p.re
    result = oracle_service.solve_bound_states(p, 0, 3)
    expected = [spectrum_service.energy(p, n, 0) for n in range(3)]
    assert result.energies == pytest.approx(expected, rel=1e-6)
