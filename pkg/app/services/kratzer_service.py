"""
Kratzer Model Service
Potential, effective potential, virial operator and potential reconstruction
"""
import logging
import math
from typing import Callable, List, Optional, Tuple

import numpy as np

from app.core.exceptions import DomainError, NumericError
from app.schemas.kratzer import EffectiveStrength, KratzerParams, PotentialSample
from app.services.quadrature import integrate

logger = logging.getLogger(__name__)

ScalarFn = Callable[[float], float]


def _require_positive_r(r) -> None:
    if np.any(np.asarray(r) <= 0):
        raise DomainError("r must be strictly positive")


def _require_l(l: int) -> None:
    if l < 0:
        raise DomainError(f"l must be a nonnegative integer, got {l}")


class KratzerService:
    """Evaluation of U(r) = alpha/r + beta/r^2 and its structure"""

    def potential(self, p: KratzerParams, r):
        """alpha/r + beta/r^2"""
        _require_positive_r(r)
        return p.alpha / r + p.beta / r ** 2

    def potential_derivatives(self, p: KratzerParams, r) -> Tuple:
        """(U, U', U'') evaluated analytically"""
        _require_positive_r(r)
        return (
            p.alpha / r + p.beta / r ** 2,
            -p.alpha / r ** 2 - 2.0 * p.beta / r ** 3,
            2.0 * p.alpha / r ** 3 + 6.0 * p.beta / r ** 4,
        )

    def centrifugal_strength(self, p: KratzerParams, l: int) -> float:
        """beta + l(l+1) hbar^2 / (2 mu)"""
        _require_l(l)
        return p.beta + l * (l + 1) * p.hbar ** 2 / (2.0 * p.mu)

    def effective_potential(self, p: KratzerParams, l: int, r):
        """alpha/r + [beta + l(l+1) hbar^2/(2 mu)]/r^2"""
        _require_positive_r(r)
        return p.alpha / r + self.centrifugal_strength(p, l) / r ** 2

    def tau(self, p: KratzerParams, l: int) -> EffectiveStrength:
        """tau = l(l+1) hbar^2 + 2 mu beta"""
        _require_l(l)
        return EffectiveStrength(l=l, tau=l * (l + 1) * p.hbar ** 2 + 2.0 * p.mu * p.beta)

    # ---------- Virial structure ----------

    def virial_residual(
        self,
        U: ScalarFn,
        r: float,
        dU: Optional[ScalarFn] = None,
        d2U: Optional[ScalarFn] = None,
    ) -> float:
        """
        r^2 U'' + 4 r U' + 2 U, the Euler operator whose kernel is span{1/r, 1/r^2}.

        Derivatives not supplied are taken by 5-point central differences with
        step h = max(1e-5, 1e-5 r).
        """
        _require_positive_r(r)
        u = U(r)
        if dU is not None and d2U is not None:
            d1, d2 = dU(r), d2U(r)
        else:
            h = max(1e-5, 1e-5 * r)
            if r - 2.0 * h <= 0:
                raise DomainError(f"r={r:g} too close to the origin for the difference stencil (h={h:g})")
            fm2, fm1, fp1, fp2 = U(r - 2 * h), U(r - h), U(r + h), U(r + 2 * h)
            d1 = dU(r) if dU is not None else (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)
            d2 = d2U(r) if d2U is not None else (-fm2 + 16.0 * fm1 - 30.0 * u + 16.0 * fp1 - fp2) / (12.0 * h * h)
        if not all(math.isfinite(v) for v in (u, d1, d2)):
            raise NumericError(f"non-finite potential or derivative at r={r:g}")
        return r * r * d2 + 4.0 * r * d1 + 2.0 * u

    @staticmethod
    def virial_magnitude(r: float, u: float, du: float, d2u: float) -> float:
        """Sum of the magnitudes of the three terms of the virial residual"""
        return r * r * abs(d2u) + 4.0 * r * abs(du) + 2.0 * abs(u)

    def kratzer_virial_residual(self, p: KratzerParams, r: float) -> float:
        """Virial residual of the Kratzer potential with analytic derivatives"""
        return self.virial_residual(
            lambda x: self.potential_derivatives(p, x)[0],
            r,
            dU=lambda x: self.potential_derivatives(p, x)[1],
            d2U=lambda x: self.potential_derivatives(p, x)[2],
        )

    def reconstruct_potential(self, W: ScalarFn, Ue: float, re: float, r: float) -> float:
        """
        U(r) = (1/r)[2 re Ue + int_re^r W] - (1/r^2)[re^2 Ue + int_re^r r' W],
        the solution with U(re) = Ue and U'(re) = 0.
        """
        _require_positive_r(r)
        if re <= 0:
            raise DomainError("re must be strictly positive")
        first = integrate(W, re, r)
        second = integrate(lambda x: x * W(x), re, r)
        return (2.0 * re * Ue + first) / r - (re * re * Ue + second) / (r * r)

    # ---------- Sampling ----------

    def sample_potential(self, p: KratzerParams, l: int, r: np.ndarray) -> List[PotentialSample]:
        r = np.asarray(r, dtype=float)
        u = self.potential(p, r)
        ueff = self.effective_potential(p, l, r)
        return [PotentialSample(r=float(a), U=float(b), U_eff=float(c)) for a, b, c in zip(r, u, ueff)]


# Singleton instance
kratzer_service = KratzerService()
