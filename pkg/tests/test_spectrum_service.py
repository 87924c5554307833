"""
Tests for the closed-form spectrum, spectrum tables and allowed transitions
"""
import math

import pytest
from hypothesis import given, strategies as st

from app.core.exceptions import DomainError
from app.schemas.kratzer import KratzerParams
from app.schemas.molecule import UNITS
from app.services.spectrum_service import spectrum_service

params_strategy = st.builds(
    KratzerParams,
    alpha=st.floats(min_value=-50.0, max_value=-0.01),
    beta=st.floats(min_value=0.0, max_value=1e4),
    mu=st.floats(min_value=0.01, max_value=1e5),
)


def test_sigma_canonical(canonical):
    assert spectrum_service.sigma_n(canonical, 0, 0) == 1.0
    assert spectrum_service.sigma_n(canonical, 1, 0) == 1.5


def test_sigma_coulomb(coulomb):
    assert spectrum_service.sigma_n(coulomb, 0, 0) == 1.0


@pytest.mark.parametrize("n, energy", [(0, -0.5), (1, -2.0 / 9.0), (2, -0.125)])
def test_energy_canonical(canonical, n, energy):
    assert spectrum_service.energy(canonical, n, 0) == pytest.approx(energy, rel=1e-15)


def test_energy_l1_canonical(canonical):
    expected = -2.0 / (4.5 + 0.5 * math.sqrt(17.0))
    assert spectrum_service.energy(canonical, 0, 1) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("n, l", [(0, 0), (1, 0), (0, 3), (4, 2), (10, 10)])
def test_coulomb_limit_is_hydrogenic(coulomb, n, l):
    assert spectrum_service.energy(coulomb, n, l) == pytest.approx(-1.0 / (2.0 * (n + l + 1) ** 2), rel=1e-14)


def test_unbound_parameters_rejected():
    p = KratzerParams.model_construct(alpha=1.0, beta=1.0, mu=1.0, hbar=1.0)
    with pytest.raises(DomainError, match="alpha"):
        spectrum_service.sigma_n(p, 0, 0)


def test_negative_quantum_numbers_rejected(canonical):
    with pytest.raises(DomainError):
        spectrum_service.energy(canonical, -1, 0)


@given(params_strategy, st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=10))
def test_energy_forms_agree(p, n, l):
    e = spectrum_service.energy(p, n, l)
    assert e < 0
    assert spectrum_service.closed_form_energy(p, n, l) == pytest.approx(e, rel=1e-13)


@given(params_strategy, st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=10))
def test_qn_equals_scaled_sigma(p, n, l):
    entry = spectrum_service.entry(p, n, l)
    assert entry.qn == pytest.approx(-p.mu * entry.sigma_n * p.alpha, rel=1e-13)


@given(params_strategy, st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=10))
def test_levels_increase_with_n_and_l(p, n, l):
    e = spectrum_service.energy(p, n, l)
    assert spectrum_service.energy(p, n + 1, l) > e
    assert spectrum_service.energy(p, n, l + 1) > e


def test_spectrum_table_singleton(canonical):
    (entry,) = spectrum_service.spectrum_table(canonical, 0, 0)
    assert (entry.n, entry.l, entry.q0, entry.qn, entry.sigma_n, entry.energy) == (0, 0, 2.0, 2.0, 1.0, -0.5)


def test_spectrum_table_values_and_order(canonical):
    table = spectrum_service.spectrum_table(canonical, 2, 1)
    assert [(e.l, e.n) for e in table] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert [e.energy for e in table[:3]] == pytest.approx([-0.5, -2.0 / 9.0, -0.125])


def test_spectrum_table_workers_match_serial(canonical):
    serial = spectrum_service.spectrum_table(canonical, 6, 4)
    assert spectrum_service.spectrum_table(canonical, 6, 4, workers=4) == serial


def test_spectrum_table_rejects_negative(canonical):
    with pytest.raises(DomainError):
        spectrum_service.spectrum_table(canonical, -1, 0)


# ---------- Transitions ----------

def test_allowed_delta_n():
    assert spectrum_service.allowed_delta_n() == [-1, 0, 1]


def test_transitions_adjacent_only(canonical):
    table = spectrum_service.transitions(canonical, 0, 3)
    assert [(t.n_lower, t.n_upper) for t in table.transitions] == [(0, 1), (1, 2), (2, 3)]
    first = table.transitions[0]
    assert first.delta_n == 1
    assert first.energy_hartree == pytest.approx(-2.0 / 9.0 + 0.5)
    assert first.wavenumber_cm1 == pytest.approx(first.energy_hartree * UNITS.invcm_per_hartree)


def test_transitions_ground_only(canonical):
    assert spectrum_service.transitions(canonical, 0, 0).transitions == []
