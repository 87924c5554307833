"""
so(2,1) Algebra Service
Closed-form eigenvalue bookkeeping: q0, q_n, Casimir, ladder coefficients
"""
import logging
import math

from app.core.config import settings
from app.core.exceptions import ConsistencyError, DomainError
from app.schemas.algebra import AlgebraEigenvalues, Direction, LadderCoefficient
from app.schemas.kratzer import KratzerParams
from app.services.kratzer_service import kratzer_service

logger = logging.getLogger(__name__)


class AlgebraService:
    """Discrete-series representation data of so(2,1) for the Kratzer problem"""

    def __init__(self, hbar: float = settings.HBAR) -> None:
        self.hbar = hbar

    def _h(self, hbar):
        return self.hbar if hbar is None else hbar

    def _require_q0(self, q0: float, hbar: float) -> None:
        if q0 < hbar * (1.0 - 1e-12):
            raise DomainError(f"q0={q0:g} lies below the lowest admissible weight hbar={hbar:g}")

    def q_ground(self, tau: float, hbar: float = None) -> float:
        """q0 = hbar/2 + hbar (tau/hbar^2 + 1/4)^(1/2)"""
        hbar = self._h(hbar)
        if tau < 0:
            raise DomainError(f"tau must be nonnegative, got {tau:g}")
        return hbar / 2.0 + hbar * math.sqrt(tau / hbar ** 2 + 0.25)

    def q_n(self, q0: float, n: int, hbar: float = None) -> float:
        hbar = self._h(hbar)
        self._require_q0(q0, hbar)
        if n < 0:
            raise DomainError(f"n must be nonnegative, got {n}")
        return q0 + n * hbar

    def casimir_eigenvalue(self, q0: float, hbar: float = None) -> float:
        """Q = q0 (q0 - hbar)"""
        hbar = self._h(hbar)
        self._require_q0(q0, hbar)
        return q0 * (q0 - hbar)

    def eigenvalues(self, p: KratzerParams, l: int) -> AlgebraEigenvalues:
        tau = kratzer_service.tau(p, l).tau
        q0 = self.q_ground(tau, p.hbar)
        return AlgebraEigenvalues(l=l, tau=tau, q0=q0, Q=self.casimir_eigenvalue(q0, p.hbar))

    def ladder_coefficient(self, q0: float, n: int, direction: Direction, hbar: float = None) -> LadderCoefficient:
        """T(+/-)|Q,q_n> = [-Q + q_n (q_n +/- hbar)]^(1/2) |Q,q_n +/- hbar>"""
        hbar = self._h(hbar)
        direction = Direction(direction)
        qn = self.q_n(q0, n, hbar)
        Q = self.casimir_eigenvalue(q0, hbar)
        shift = hbar if direction is Direction.UP else -hbar
        radicand = -Q + qn * (qn + shift)
        if radicand < -1e-12 * max(1.0, abs(Q)):
            raise ConsistencyError(f"negative ladder radicand {radicand:g} for q0={q0:g}, n={n}, {direction.value}")
        return LadderCoefficient(n_from=n, direction=direction, value=math.sqrt(max(radicand, 0.0)))

    def chain_prefactor(self, q0: float, n: int, hbar: float = None) -> float:
        """Product of the raising coefficients c+(0) ... c+(n-1); 1 for n = 0"""
        if n < 0:
            raise DomainError(f"n must be nonnegative, got {n}")
        value = 1.0
        for k in range(n):
            value *= self.ladder_coefficient(q0, k, Direction.UP, hbar).value
        return value


# Singleton instance
algebra_service = AlgebraService()
