"""
so(2,1) Schemas
Eigenvalue bookkeeping of the discrete-series representation
"""
import enum

from pydantic import BaseModel, ConfigDict, Field


class Direction(str, enum.Enum):
    """Ladder direction"""
    UP = "up"
    DOWN = "down"


class AlgebraEigenvalues(BaseModel):
    """Ground T3 eigenvalue and Casimir eigenvalue for one rotational level"""
    model_config = ConfigDict(frozen=True)

    l: int = Field(..., ge=0)
    tau: float = Field(..., ge=0, description="[hbar^2]")
    q0: float = Field(..., description="Lowest T3 eigenvalue [hbar]")
    Q: float = Field(..., description="Casimir eigenvalue q0 (q0 - hbar) [hbar^2]")


class LadderCoefficient(BaseModel):
    """T(+/-)|Q,q_n> = value |Q,q_n +/- hbar>"""
    model_config = ConfigDict(frozen=True)

    n_from: int = Field(..., ge=0)
    direction: Direction
    value: float = Field(..., ge=0, description="[hbar]")
