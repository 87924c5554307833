"""
Application configuration using pydantic-settings
"""
from pathlib import Path

from pydantic_settings import BaseSettings


BASE_DIR = Path(__file__).resolve().parent.parent.parent


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Server
    HOST: str = "0.0.0.0"
    PORT: int = 8000
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Reduced Planck constant in internal units (Hartree atomic units: 1)
    HBAR: float = 1.0

    # Molecule table (the only store)
    MOLECULE_TABLE: str = str(BASE_DIR / "data" / "molecules.csv")

    # Quadrature
    QUAD_EPSABS: float = 1e-12
    QUAD_LIMIT: int = 200

    # Wavefunction sampling grid, in units of the decay length hbar*sigma_n
    WAVEFUNCTION_GRID_POINTS: int = 4000
    WAVEFUNCTION_GRID_LOW: float = 1e-3
    WAVEFUNCTION_GRID_HIGH: float = 40.0

    # Operator grid (f-space generators)
    OPERATOR_GRID_POINTS: int = 4000
    OPERATOR_GRID_R_MAX: float = 40.0
    OPERATOR_INTERIOR_FRACTION: float = 0.05
    OPERATOR_CONVERGENCE_POINTS: int = 1000

    # Finite-difference eigensolver
    ORACLE_POINTS: int = 20000
    ORACLE_BOX_FACTOR: float = 60.0
    ORACLE_INNER_FACTOR: float = 1e-4
    ORACLE_CACHE_SIZE: int = 64

    # Verification tolerances
    TOL_ALGEBRA: float = 1e-5
    TOL_LADDER: float = 1e-4
    TOL_ORACLE_ENERGY: float = 1e-6
    TOL_ORACLE_OVERLAP: float = 1e-6
    TOL_ORTHONORMAL: float = 1e-6
    TOL_NORMALIZATION: float = 1e-10
    TOL_VIRIAL: float = 1e-12
    # Relative to r^2|U''| + 4r|U'| + 2|U| (5-point stencil, h = 1e-5)
    TOL_VIRIAL_DIFFERENCES: float = 1e-5
    MIN_CONVERGENCE_ORDER: float = 3.5

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"


# Create settings instance
settings = Settings()
