"""
Wavefunction Schemas
Closed-form radial states f(r) = r Q(r) and their grid samples
"""
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import eval_genlaguerre, roots_genlaguerre

from app.schemas.grid import RadialGrid


class BoundState(BaseModel):
    """
    f(r) = exp(log_norm) * r**exponent_power * exp(-r/scale) * P(r),  Q(r) = f(r)/r

    poly_coeffs are the ascending coefficients of P in r; P(0) = 1. Values and
    derivatives of P are evaluated through P(r) = L_n^(a)(2r/scale) / L_n^(a)(0),
    a = 2 q0/hbar - 1, since the power series cancels badly near the envelope
    peak once q0/hbar is large.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    l: int = Field(..., ge=0)
    q0: float = Field(..., description="Lowest T3 eigenvalue [hbar]")
    exponent_power: float = Field(..., ge=1, description="q0/hbar")
    scale: float = Field(..., gt=0, description="Decay length hbar*sigma_n [bohr]")
    sigma: float = Field(..., gt=0, description="sigma_n [bohr per hbar]")
    energy: float
    poly_coeffs: List[float]
    log_norm: float = Field(..., description="Logarithm of the normalization constant")

    @property
    def norm_constant(self) -> float:
        return float(np.exp(self.log_norm))

    @property
    def laguerre_order(self) -> float:
        return 2.0 * self.exponent_power - 1.0

    def nodes(self) -> np.ndarray:
        """Strictly positive roots of P, ascending"""
        if self.n == 0:
            return np.array([])
        roots, _ = roots_genlaguerre(self.n, self.laguerre_order)
        return np.sort(roots) * self.scale / 2.0

    def _poly(self, r: np.ndarray, k: int = 0) -> np.ndarray:
        """k-th r-derivative of P; d/dy L_n^(a) = -L_(n-1)^(a+1)"""
        if k > self.n:
            return np.zeros_like(r)
        a = self.laguerre_order
        y = 2.0 * r / self.scale
        value = eval_genlaguerre(self.n - k, a + k, y) / eval_genlaguerre(self.n, a, 0.0)
        return (-2.0 / self.scale) ** k * value

    def _envelope(self, r: np.ndarray) -> np.ndarray:
        return np.exp(self.log_norm + self.exponent_power * np.log(r) - r / self.scale)

    def f(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self._envelope(r) * self._poly(r)

    def Q(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.f(r) / r

    def df(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        k = self.exponent_power / r - 1.0 / self.scale
        return self._envelope(r) * (k * self._poly(r) + self._poly(r, 1))

    def d2f(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        k = self.exponent_power / r - 1.0 / self.scale
        dk = -self.exponent_power / r ** 2
        return self._envelope(r) * ((k * k + dk) * self._poly(r) + 2.0 * k * self._poly(r, 1) + self._poly(r, 2))


class SampledWaveFunction(BaseModel):
    """Samples of Q_n(r) on a radial grid"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    values: np.ndarray
    norm: float = Field(..., description="Integral of Q^2 r^2 over the grid")
    n: Optional[int] = None
    l: Optional[int] = None


class WaveFunctionHeader(BaseModel):
    """Metadata emitted with wavefunction samples"""
    n: int
    l: int
    sigma_n: float
    q0: float
    A: Optional[float] = Field(None, description="Normalization constant; None when it overflows a float")
    log_A: float
    energy: float


class WaveFunctionPoint(BaseModel):
    r: float
    Q: float


class WaveFunctionResponse(BaseModel):
    """Wavefunction export"""
    header: WaveFunctionHeader
    samples: List[WaveFunctionPoint]
