"""
Tests for the command-line front end
"""
import io
import json

import numpy as np
import pytest

from app import cli

CANONICAL = ["--alpha", "-2", "--beta", "1", "--mu", "1"]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def data_rows(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return [line.split(",") for line in lines[1:]]


def test_spectrum_canonical():
    code, out, _ = run(["spectrum", *CANONICAL, "--n-max", "2"])
    assert code == 0
    energies = [float(row[5]) for row in data_rows(out)]
    assert energies == pytest.approx([-0.5, -2.0 / 9.0, -0.125])


def test_spectrum_output_is_byte_identical():
    argv = ["spectrum", *CANONICAL, "--n-max", "3", "--l-max", "2"]
    assert run(argv)[1] == run(argv)[1]
    assert run(argv + ["--workers", "3"])[1] == run(argv)[1]


def test_missing_mu_is_usage_error():
    code, out, err = run(["spectrum", "--alpha", "-2", "--beta", "1"])
    assert code == 2
    assert out == ""
    assert "--mu" in err


def test_repulsive_alpha_is_domain_error():
    code, _, err = run(["spectrum", "--alpha", "2", "--beta", "1", "--mu", "1"])
    assert code == 3
    assert "alpha" in err


def test_negative_n_max_is_usage_error():
    assert run(["spectrum", *CANONICAL, "--n-max", "-1"])[0] == 2


def test_unknown_subcommand_and_suite():
    assert run(["bogus"])[0] == 2
    assert run(["verify", "--suite", "bogus"])[0] == 2


def test_wavefunction_first_excited_has_one_node_near_3():
    code, out, _ = run(["wavefunction", *CANONICAL, "--n", "1"])
    assert code == 0
    assert out.startswith("# n=1\n")
    rows = np.array([[float(v) for v in row] for row in data_rows(out)])
    r, q = rows[:, 0], rows[:, 1]
    significant = np.abs(q) > 1e-12 * np.abs(q).max()
    changes = np.flatnonzero(np.diff(np.sign(q[significant])) != 0)
    assert len(changes) == 1
    rs = r[significant]
    assert rs[changes[0]] <= 3.0 <= rs[changes[0] + 1]


def test_wavefunction_explicit_grid_json():
    code, out, _ = run(["wavefunction", *CANONICAL, "--r-min", "1", "--r-max", "2", "--points", "2",
                        "--spacing", "uniform", "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["header"]["A"] == pytest.approx(2.0 / 3.0 ** 0.5)
    assert [s["r"] for s in payload["samples"]] == [1.0, 2.0]


def test_wavefunction_bad_range():
    assert run(["wavefunction", *CANONICAL, "--r-min", "2", "--r-max", "1"])[0] == 2


def test_verify_adjoint():
    code, out, _ = run(["verify", "--suite", "adjoint"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert all(check["passed"] for check in report["checks"])


def test_verify_below_floor_exits_1():
    code, out, err = run(["verify", "--suite", "virial", "--tolerance", "1e-14"])
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "FAILED" in err


def test_verify_nonpositive_tolerance():
    assert run(["verify", "--suite", "adjoint", "--tolerance", "0"])[0] == 2


@pytest.mark.slow
def test_verify_algebra_below_floor_exits_1():
    assert run(["verify", "--suite", "algebra", "--tolerance", "1e-12"])[0] == 1


def test_constants():
    code, out, _ = run(["constants"])
    assert code == 0
    assert json.loads(out)["hbar"] == 1.0
    code, out, _ = run(["constants", "--format", "csv"])
    assert out.splitlines()[0] == "name,value"


def test_molecules_list_and_inspect():
    code, out, _ = run(["molecules"])
    assert code == 0
    assert {"H2", "CO", "HCl", "N2"} <= {row["name"] for row in json.loads(out)}
    code, out, _ = run(["molecules", "--name", "CO"])
    assert code == 0
    summary = json.loads(out)
    assert summary["record"]["name"] == "CO"
    assert summary["ground_energy_hartree"] < 0
    assert run(["molecules", "--name", "XYZ"])[0] == 3


def test_table_mode(molecule_table):
    code, out, _ = run(["spectrum", "--molecules", molecule_table, "--name", "X", "--n-max", "0"])
    assert code == 0
    assert len(data_rows(out)) == 1
    assert run(["spectrum", "--molecules", molecule_table])[0] == 2


def test_malformed_table_is_domain_exit(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("name,De,De_unit,re,re_unit,mass1_amu,mass2_amu\nX,1,kcal,1,bohr,1,1\n", encoding="utf-8")
    code, _, err = run(["spectrum", "--molecules", str(path), "--name", "X"])
    assert code == 3
    assert "kcal" in err


def test_physical_mode():
    code, out, _ = run(["spectrum", "--De", "11.2256", "--De-unit", "eV", "--re", "1.1283",
                        "--re-unit", "angstrom", "--mu-amu", "6.8562", "--n-max", "1"])
    assert code == 0
    assert len(data_rows(out)) == 2


def test_potential():
    code, out, _ = run(["potential", *CANONICAL, "--r-min", "0.5", "--r-max", "1", "--points", "2",
                        "--spacing", "uniform"])
    assert code == 0
    rows = data_rows(out)
    assert [float(row[1]) for row in rows] == [0.0, -1.0]


def test_transitions():
    code, out, _ = run(["transitions", *CANONICAL, "--n-max", "2"])
    assert code == 0
    assert [(row[1], row[2]) for row in data_rows(out)] == [("0", "1"), ("1", "2")]


def test_output_file(tmp_path):
    path = tmp_path / "spectrum.json"
    code, out, _ = run(["spectrum", *CANONICAL, "--format", "json", "--output", str(path)])
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text(encoding="utf-8"))[0]["n"] == 0
