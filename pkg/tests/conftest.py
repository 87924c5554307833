"""
Shared fixtures
"""
import pytest

from app.schemas.grid import RadialGrid
from app.schemas.kratzer import KratzerParams
from app.services.grid_operator_service import grid_operator_service
from app.services.oracle_service import oracle_cache


@pytest.fixture
def canonical() -> KratzerParams:
    """alpha = -2, beta = 1, mu = 1: De = re = 1"""
    return KratzerParams(alpha=-2.0, beta=1.0, mu=1.0)


@pytest.fixture
def coulomb() -> KratzerParams:
    return KratzerParams(alpha=-1.0, beta=0.0, mu=1.0)


@pytest.fixture(scope="session")
def canonical_grid() -> RadialGrid:
    """4000 uniform points, h = 0.01, r_max = 40"""
    return grid_operator_service.canonical_grid()


@pytest.fixture
def molecule_table(tmp_path):
    path = tmp_path / "molecules.csv"
    path.write_text(
        "name,De,De_unit,re,re_unit,mass1_amu,mass2_amu\n"
        "X,1.0,hartree,1.0,bohr,1.0,1.0\n"
        "CO,11.2256,eV,1.1283,angstrom,12.0,15.995\n",
        encoding="utf-8",
    )
    return str(path)


@pytest.fixture
def clear_oracle_cache():
    oracle_cache.clear()
    yield
    oracle_cache.clear()
