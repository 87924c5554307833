"""
Request Schemas
Model-parameter input shared by the CLI and the HTTP API
"""
from typing import Optional

from pydantic import BaseModel, Field

from app.schemas.molecule import EnergyUnit, LengthUnit


class ModelInput(BaseModel):
    """
    Exactly one of three entry modes:
    raw (alpha, beta, mu), physical (De, re, mu_amu with units) or
    table (molecule name, optional table path).
    """
    alpha: Optional[float] = Field(None, description="[hartree*bohr]")
    beta: Optional[float] = Field(None, description="[hartree*bohr^2]")
    mu: Optional[float] = Field(None, description="Reduced mass [electron masses]")

    De: Optional[float] = None
    De_unit: EnergyUnit = EnergyUnit.HARTREE
    re: Optional[float] = None
    re_unit: LengthUnit = LengthUnit.BOHR
    mu_amu: Optional[float] = None

    molecule: Optional[str] = Field(None, description="Molecule name in the table")
    molecules_path: Optional[str] = Field(None, description="Molecule table; defaults to the bundled one")


class SpectrumRequest(BaseModel):
    model: ModelInput
    n_max: int = Field(4, ge=0)
    l_max: int = Field(0, ge=0)


class TransitionsRequest(BaseModel):
    model: ModelInput
    l: int = Field(0, ge=0)
    n_max: int = Field(4, ge=0)


class WaveFunctionRequest(BaseModel):
    model: ModelInput
    n: int = Field(0, ge=0)
    l: int = Field(0, ge=0)
    r_min: Optional[float] = Field(None, gt=0)
    r_max: Optional[float] = Field(None, gt=0)
    points: Optional[int] = Field(None, ge=1)
    spacing: str = Field("log", pattern="^(log|uniform)$")
