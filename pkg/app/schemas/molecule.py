"""
Molecule Schemas
Experimental inputs, fixed conversion constants and atomic-unit parameters
"""
import enum
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import constants as sc


class EnergyUnit(str, enum.Enum):
    """Energy unit tags accepted in the molecule table"""
    HARTREE = "hartree"
    EV = "eV"
    INVCM = "cm-1"


class LengthUnit(str, enum.Enum):
    """Length unit tags accepted in the molecule table"""
    BOHR = "bohr"
    ANGSTROM = "angstrom"


class UnitSystem(BaseModel):
    """Fixed conversion constants (CODATA via scipy.constants); hbar = 1 internally"""
    model_config = ConfigDict(frozen=True)

    hbar: float = 1.0
    hartree_per_eV: float = 1.0 / sc.physical_constants["Hartree energy in eV"][0]
    hartree_per_invcm: float = 1.0 / (
        sc.physical_constants["hartree-inverse meter relationship"][0] / 100.0
    )
    bohr_per_angstrom: float = sc.angstrom / sc.physical_constants["Bohr radius"][0]
    electronmass_per_amu: float = sc.physical_constants["atomic mass constant"][0] / sc.m_e

    @property
    def eV_per_hartree(self) -> float:
        return 1.0 / self.hartree_per_eV

    @property
    def invcm_per_hartree(self) -> float:
        return 1.0 / self.hartree_per_invcm


UNITS = UnitSystem()


class MoleculeRecord(BaseModel):
    """One row of the molecule table, in the units it was published in"""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1, description="Molecule label")
    De_value: float = Field(..., gt=0, description="Well depth")
    De_unit: EnergyUnit
    re_value: float = Field(..., gt=0, description="Equilibrium internuclear distance")
    re_unit: LengthUnit
    mass1: float = Field(..., gt=0, description="Nuclear mass 1 [amu]")
    mass2: float = Field(..., gt=0, description="Nuclear mass 2 [amu]")
    mu_amu: Optional[float] = Field(None, gt=0, description="Reduced-mass override [amu]")

    @field_validator("name")
    @classmethod
    def _strip_name(cls, v: str) -> str:
        v = v.strip()
        if not v:
            raise ValueError("name must be nonempty")
        return v


class MolecularParams(BaseModel):
    """Physical inputs in Hartree atomic units"""
    model_config = ConfigDict(frozen=True)

    De: float = Field(..., gt=0, description="Well depth [hartree]")
    re: float = Field(..., gt=0, description="Equilibrium distance [bohr]")
    mu: float = Field(..., gt=0, description="Reduced mass [electron masses]")

    @field_validator("De", "re", "mu")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v


class MoleculeSummary(BaseModel):
    """Molecule record with its derived model parameters"""
    record: MoleculeRecord
    params: MolecularParams
    alpha: float
    beta: float
    ground_energy_hartree: float
    first_gap_cm1: float = Field(..., description="E(1,0) - E(0,0) [cm-1]")
    harmonic_gap_cm1: float = Field(..., description="Harmonic-limit gap sqrt(2 De / (mu re^2)) [cm-1]")


class ConstantsReport(BaseModel):
    """Fixed conversion constants, as emitted by the constants command"""
    hbar: float
    hartree_per_eV: float
    eV_per_hartree: float
    hartree_per_invcm: float
    invcm_per_hartree: float
    bohr_per_angstrom: float
    electronmass_per_amu: float
