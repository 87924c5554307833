"""
Spectrum Service
Closed-form bound-state energies, canonical scales and spectrum tables
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from app.core.exceptions import DomainError
from app.schemas.kratzer import KratzerParams
from app.schemas.molecule import UNITS
from app.schemas.spectrum import SpectrumEntry, Transition, TransitionTable
from app.services.adjoint_service import adjoint_service
from app.services.algebra_service import algebra_service

logger = logging.getLogger(__name__)


def _require_bound(p: KratzerParams) -> None:
    if p.alpha >= 0:
        raise DomainError(f"alpha={p.alpha:g} admits no bound states (alpha < 0 required)")


def _require_quantum_numbers(n: int, l: int) -> None:
    if n < 0 or l < 0:
        raise DomainError(f"quantum numbers must be nonnegative, got n={n}, l={l}")


class SpectrumService:
    """Energies eps(n,l) = -1/(2 mu sigma_n^2) and their tabulation"""

    def radical(self, p: KratzerParams, l: int) -> float:
        """[(l+1/2)^2 + 2 mu beta / hbar^2]^(1/2)"""
        return math.sqrt((l + 0.5) ** 2 + 2.0 * p.mu * p.beta / p.hbar ** 2)

    def sigma_n(self, p: KratzerParams, n: int, l: int) -> float:
        """sigma_n = -(hbar/(mu alpha)) (n + 1/2 + radical)"""
        _require_bound(p)
        _require_quantum_numbers(n, l)
        return -(p.hbar / (p.mu * p.alpha)) * (n + 0.5 + self.radical(p, l))

    def energy(self, p: KratzerParams, n: int, l: int) -> float:
        sigma = self.sigma_n(p, n, l)
        return -1.0 / (2.0 * p.mu * sigma ** 2)

    def closed_form_energy(self, p: KratzerParams, n: int, l: int) -> float:
        """
        Expanded form -mu alpha^2 / (2 hbar^2 {n + 1/2 + radical}^2).

        Kept separate from energy() so the two bookkeepings can be compared.
        """
        _require_bound(p)
        _require_quantum_numbers(n, l)
        denominator = n + 0.5 + self.radical(p, l)
        return -p.mu * p.alpha ** 2 / (2.0 * p.hbar ** 2 * denominator ** 2)

    def entry(self, p: KratzerParams, n: int, l: int) -> SpectrumEntry:
        eig = algebra_service.eigenvalues(p, l)
        sigma = self.sigma_n(p, n, l)
        return SpectrumEntry(
            n=n,
            l=l,
            q0=eig.q0,
            qn=algebra_service.q_n(eig.q0, n, p.hbar),
            sigma_n=sigma,
            energy=-1.0 / (2.0 * p.mu * sigma ** 2),
        )

    def spectrum_table(
        self, p: KratzerParams, n_max: int, l_max: int, workers: Optional[int] = None
    ) -> List[SpectrumEntry]:
        """
        (n_max+1)(l_max+1) entries sorted by (l, n).

        Entries are independent; with workers > 1 they are evaluated on a
        thread pool and reassembled in (l, n) order.
        """
        if n_max < 0 or l_max < 0:
            raise DomainError(f"n_max and l_max must be nonnegative, got {n_max}, {l_max}")
        _require_bound(p)
        keys = [(n, l) for l in range(l_max + 1) for n in range(n_max + 1)]
        logger.info(f"Building spectrum table: n_max={n_max}, l_max={l_max}, alpha={p.alpha:g}, beta={p.beta:g}, mu={p.mu:g}")
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(lambda key: self.entry(p, *key), keys))
        return [self.entry(p, n, l) for n, l in keys]

    # ---------- Transitions ----------

    def allowed_delta_n(self) -> List[int]:
        rules = adjoint_service.selection_rules()
        return sorted(rules.allowed)

    def transitions(self, p: KratzerParams, l: int, n_max: int) -> TransitionTable:
        """Absorption pairs n < n' <= n_max whose delta n is allowed, ordered by (n, n')"""
        if n_max < 0:
            raise DomainError(f"n_max must be nonnegative, got {n_max}")
        allowed = self.allowed_delta_n()
        energies = [self.energy(p, n, l) for n in range(n_max + 1)]
        rows = []
        for lower in range(n_max + 1):
            for upper in range(lower + 1, n_max + 1):
                if upper - lower not in allowed:
                    continue
                gap = energies[upper] - energies[lower]
                rows.append(
                    Transition(
                        l=l,
                        n_lower=lower,
                        n_upper=upper,
                        delta_n=upper - lower,
                        energy_hartree=gap,
                        wavenumber_cm1=gap * UNITS.invcm_per_hartree,
                    )
                )
        logger.debug(f"{len(rows)} allowed transition(s) for l={l}, n_max={n_max}")
        return TransitionTable(allowed_delta_n=allowed, transitions=rows)


# Singleton instance
spectrum_service = SpectrumService()
