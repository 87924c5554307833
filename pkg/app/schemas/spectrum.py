"""
Spectrum Schemas
"""
from typing import List

from pydantic import BaseModel, ConfigDict, Field


class SpectrumEntry(BaseModel):
    """One bound state of the spectrum table"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0, description="Vibrational quantum number")
    l: int = Field(..., ge=0, description="Rotational quantum number")
    q0: float = Field(..., description="Lowest T3 eigenvalue [hbar]")
    qn: float = Field(..., description="q0 + n hbar [hbar]")
    sigma_n: float = Field(..., gt=0, description="Canonical scale [bohr per hbar]")
    energy: float = Field(..., lt=0, description="Bound-state energy [hartree]")


class Transition(BaseModel):
    """A vibrational transition allowed by the selection rules"""
    model_config = ConfigDict(frozen=True)

    l: int
    n_lower: int
    n_upper: int
    delta_n: int
    energy_hartree: float = Field(..., description="E(n_upper) - E(n_lower)")
    wavenumber_cm1: float


class SpectrumTable(BaseModel):
    """Spectrum table response"""
    alpha: float
    beta: float
    mu: float
    entries: List[SpectrumEntry]


class TransitionTable(BaseModel):
    """Transition list response"""
    allowed_delta_n: List[int]
    transitions: List[Transition]
