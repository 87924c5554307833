"""
Kratzer Model Schemas
"""
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


class KratzerParams(BaseModel):
    """
    Algebraic coefficients of U(r) = alpha/r + beta/r^2.

    beta = 0 is admitted (Coulomb limit) when built directly; derive_kratzer
    never produces it.
    """
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., lt=0, description="[hartree*bohr]")
    beta: float = Field(..., ge=0, description="[hartree*bohr^2]")
    mu: float = Field(..., gt=0, description="Reduced mass [electron masses]")
    hbar: float = Field(1.0, gt=0, description="Reduced Planck constant in internal units")

    @model_validator(mode="after")
    def _finite(self) -> "KratzerParams":
        for name in ("alpha", "beta", "mu", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        return self

    @property
    def re(self) -> float:
        """Position of the well minimum, 2 beta / (-alpha)"""
        return 2.0 * self.beta / (-self.alpha)

    @property
    def depth(self) -> float:
        """Well depth alpha^2 / (4 beta); infinite in the Coulomb limit"""
        if self.beta == 0:
            return math.inf
        return self.alpha ** 2 / (4.0 * self.beta)


class EffectiveStrength(BaseModel):
    """tau = l(l+1) hbar^2 + 2 mu beta"""
    model_config = ConfigDict(frozen=True)

    l: int = Field(..., ge=0)
    tau: float = Field(..., ge=0, description="[hbar^2]")


class PotentialSample(BaseModel):
    """One row of a sampled potential export"""
    r: float
    U: float
    U_eff: float
