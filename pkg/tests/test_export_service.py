"""
Tests for CSV and JSON rendering
"""
import json

import pytest

from app.services.export_service import SPECTRUM_COLUMNS, OutputFormat, export_service
from app.services.spectrum_service import spectrum_service
from app.services.wavefunction_service import wavefunction_service
from app.schemas.grid import RadialGrid


def test_spectrum_csv(canonical):
    text = export_service.render_spectrum(spectrum_service.spectrum_table(canonical, 1, 0), OutputFormat.CSV)
    lines = text.splitlines()
    assert lines[0] == ",".join(SPECTRUM_COLUMNS)
    assert lines[1].startswith("0,0,2,2,1,-0.5,")
    assert lines[2].startswith("1,0,2,3,1.5,-0.2222222222222222,")
    assert text.endswith("\n") and "\r" not in text


def test_spectrum_json(canonical):
    rows = json.loads(export_service.render_spectrum(spectrum_service.spectrum_table(canonical, 0, 0), "json"))
    assert rows[0]["energy_hartree"] == -0.5
    assert rows[0]["energy_eV"] == pytest.approx(-0.5 * 27.211386245988, rel=1e-12)


def test_csv_comment_preamble():
    text = export_service.to_csv([{"a": 1}], ["a"], comments={"n": 0, "q0": 2.0})
    assert text == "# n=0\n# q0=2.0\na\n1\n"


def test_wavefunction_csv(canonical):
    state = wavefunction_service.ground_state(canonical, 0)
    response = wavefunction_service.response(state, wavefunction_service.sample(state, RadialGrid(points=[1.0, 2.0])))
    lines = export_service.render_wavefunction(response, "csv").splitlines()
    assert lines[0] == "# n=0"
    assert "r,Q" in lines
    assert lines[-2].startswith("1,0.42479")


def test_json_is_deterministic(canonical):
    table = spectrum_service.transitions(canonical, 0, 3)
    first = export_service.render_transitions(table, "json")
    assert first == export_service.render_transitions(table, "json")
    assert first.endswith("}\n")


def test_write_to_file(tmp_path):
    path = tmp_path / "out.csv"
    export_service.write("a\n1\n", str(path), None)
    assert path.read_text(encoding="utf-8") == "a\n1\n"
