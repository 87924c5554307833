"""
Tests for the HTTP API
"""
import pytest
from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)

CANONICAL = {"alpha": -2.0, "beta": 1.0, "mu": 1.0}


def test_root_and_health():
    assert client.get("/").status_code == 200
    assert client.get("/health").json()["status"] == "healthy"


def test_spectrum():
    response = client.post("/api/v1/spectrum", json={"model": CANONICAL, "n_max": 2})
    assert response.status_code == 200
    body = response.json()
    assert [e["energy"] for e in body["entries"]] == pytest.approx([-0.5, -2.0 / 9.0, -0.125])
    assert body["alpha"] == -2.0


def test_spectrum_missing_parameter():
    response = client.post("/api/v1/spectrum", json={"model": {"alpha": -2.0, "beta": 1.0}})
    assert response.status_code == 400
    assert "--mu" in response.json()["detail"]


def test_spectrum_unbound_parameters():
    response = client.post("/api/v1/spectrum", json={"model": {"alpha": 2.0, "beta": 1.0, "mu": 1.0}})
    assert response.status_code == 422
    assert response.json()["error"] == "DomainError"


def test_spectrum_request_validation():
    assert client.post("/api/v1/spectrum", json={"model": CANONICAL, "n_max": -1}).status_code == 422


def test_spectrum_from_bundled_molecule():
    response = client.post("/api/v1/spectrum", json={"model": {"molecule": "H2"}, "n_max": 1})
    assert response.status_code == 200
    assert len(response.json()["entries"]) == 2


def test_transitions():
    response = client.post("/api/v1/spectrum/transitions", json={"model": CANONICAL, "n_max": 3})
    assert response.status_code == 200
    body = response.json()
    assert body["allowed_delta_n"] == [-1, 0, 1]
    assert [t["delta_n"] for t in body["transitions"]] == [1, 1, 1]


def test_wavefunction():
    response = client.post(
        "/api/v1/wavefunction",
        json={"model": CANONICAL, "n": 1, "r_min": 1.0, "r_max": 5.0, "points": 5, "spacing": "uniform"},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["header"]["n"] == 1
    samples = {s["r"]: s["Q"] for s in body["samples"]}
    assert samples[3.0] == pytest.approx(0.0, abs=1e-15)
    assert samples[2.0] * samples[4.0] < 0


def test_wavefunction_bad_spacing():
    response = client.post("/api/v1/wavefunction", json={"model": CANONICAL, "spacing": "cubic"})
    assert response.status_code == 422


def test_verify_adjoint():
    response = client.get("/api/v1/verify/adjoint")
    assert response.status_code == 200
    assert response.json()["passed"] is True


def test_verify_with_model_and_override():
    response = client.get("/api/v1/verify/virial", params={**CANONICAL, "tolerance": 1e-14})
    assert response.status_code == 200
    assert response.json()["passed"] is False


def test_verify_unknown_suite():
    assert client.get("/api/v1/verify/bogus").status_code == 422


def test_constants():
    body = client.get("/api/v1/constants").json()
    assert body["hbar"] == 1.0
    assert body["invcm_per_hartree"] == pytest.approx(219474.63, rel=1e-7)


def test_molecules():
    names = [m["name"] for m in client.get("/api/v1/molecules").json()]
    assert "CO" in names
    summary = client.get("/api/v1/molecules/CO").json()
    assert summary["params"]["re"] == pytest.approx(1.1283 * 1.8897261, rel=1e-6)
    assert client.get("/api/v1/molecules/XYZ").status_code == 404
