"""
Oracle Solver Service
Finite-difference radial eigensolver used as ground truth for the closed forms
"""
import logging
import math
import threading
from typing import Optional, Sequence

import numpy as np
from cachetools import LRUCache
from scipy.linalg import eigh_tridiagonal

from app.core.config import settings
from app.core.exceptions import BoxTooSmallError, DomainError, UsageError
from app.schemas.grid import RadialGrid, Spacing
from app.schemas.kratzer import KratzerParams
from app.schemas.oracle import ComparisonReport, ComparisonRow, GridSpec, OracleResult
from app.schemas.spectrum import SpectrumEntry
from app.services.algebra_service import algebra_service
from app.services.kratzer_service import kratzer_service
from app.services.spectrum_service import spectrum_service
from app.services.wavefunction_service import wavefunction_service

logger = logging.getLogger(__name__)

# Solved spectra keyed by (parameters, l, count, box)
oracle_cache: LRUCache = LRUCache(maxsize=settings.ORACLE_CACHE_SIZE)
_cache_lock = threading.Lock()


def node_count(values: np.ndarray, threshold: float = 1e-6) -> int:
    """Sign changes among samples above threshold*max|values|"""
    values = np.asarray(values)
    significant = values[np.abs(values) > threshold * np.max(np.abs(values))]
    return int(np.count_nonzero(np.diff(np.sign(significant)) != 0))


class OracleService:
    """Symmetric tridiagonal discretization of the radial equation with Richardson refinement"""

    def coverage_r_max(self, p: KratzerParams, l: int, count: int) -> float:
        """
        Outer wall that holds the top requested state: hbar sigma_(count-1) times
        max(60, reach + 6 sqrt(reach) + 10), reach = q0/hbar + count.
        """
        reach = algebra_service.eigenvalues(p, l).q0 / p.hbar + count
        factor = max(settings.ORACLE_BOX_FACTOR, reach + 6.0 * math.sqrt(reach) + 10.0)
        return factor * p.hbar * spectrum_service.sigma_n(p, count - 1, l)

    def resolve_grid(self, p: KratzerParams, l: int, count: int, box: Optional[GridSpec] = None) -> GridSpec:
        """Fill unset box fields: r_min = 1e-4 re_eff, r_max = coverage_r_max"""
        box = box or GridSpec()
        beta_eff = kratzer_service.centrifugal_strength(p, l)
        re_eff = 2.0 * beta_eff / (-p.alpha)
        r_min = box.r_min if box.r_min is not None else settings.ORACLE_INNER_FACTOR * re_eff
        r_max = box.r_max if box.r_max is not None else self.coverage_r_max(p, l, count)
        if r_max <= r_min:
            raise DomainError(f"solve box is empty: r_min={r_min:g}, r_max={r_max:g}")
        return GridSpec(r_min=r_min, r_max=r_max, points=box.points or settings.ORACLE_POINTS)

    def _eigenpairs(self, p: KratzerParams, l: int, count: int, r_min: float, r_max: float, points: int,
                    vectors: bool):
        h = (r_max - r_min) / (points + 1)
        r = r_min + h * np.arange(1, points + 1)
        kinetic = p.hbar ** 2 / (2.0 * p.mu * h * h)
        diagonal = 2.0 * kinetic + kratzer_service.effective_potential(p, l, r)
        off_diagonal = np.full(points - 1, -kinetic)
        result = eigh_tridiagonal(
            diagonal, off_diagonal, eigvals_only=not vectors, select="i", select_range=(0, count - 1)
        )
        return r, h, result

    def solve_bound_states(
        self, p: KratzerParams, l: int, count: int, grid_spec: Optional[GridSpec] = None
    ) -> OracleResult:
        """
        Lowest `count` eigenpairs of -(hbar^2/2mu) f'' + U_eff f = E f with
        f(r_min) = f(r_max) = 0, at N and 2N+1 interior points, Richardson-extrapolated.

        Raises:
            BoxTooSmallError: fewer than `count` negative eigenvalues in the box
        """
        if count < 1:
            raise DomainError(f"count must be at least 1, got {count}")
        if l < 0:
            raise DomainError(f"l must be nonnegative, got {l}")
        box = self.resolve_grid(p, l, count, grid_spec)
        key = (p.alpha, p.beta, p.mu, p.hbar, l, count, box.r_min, box.r_max, box.points)
        with _cache_lock:
            cached = oracle_cache.get(key)
        if cached is not None:
            logger.debug(f"Using cached oracle solution for l={l}, count={count}")
            return cached

        logger.info(
            f"Oracle solve: l={l}, count={count}, box=[{box.r_min:g}, {box.r_max:g}], points={box.points}/{2 * box.points + 1}"
        )
        _, _, coarse = self._eigenpairs(p, l, count, box.r_min, box.r_max, box.points, vectors=False)
        r, h, (fine, states) = self._eigenpairs(p, l, count, box.r_min, box.r_max, 2 * box.points + 1, vectors=True)

        negative = int(np.count_nonzero(fine < 0))
        if negative < count:
            suggested = max(2.0 * box.r_max, self.coverage_r_max(p, l, count))
            raise BoxTooSmallError(found=negative, requested=count, suggested_r_max=suggested)

        extrapolated = (4.0 * fine - coarse) / 3.0
        states = states.T / np.sqrt(h * np.sum(states.T ** 2, axis=1))[:, None]
        for row in states:
            peak = np.max(np.abs(row))
            first = np.argmax(np.abs(row) > 1e-6 * peak)
            if row[first] < 0:
                row *= -1.0
        states.setflags(write=False)

        result = OracleResult(
            l=l,
            energies=[float(e) for e in extrapolated],
            raw_energies=[float(e) for e in fine],
            estimated_error=[float(abs(a - b)) for a, b in zip(extrapolated, fine)],
            states=states,
            grid=RadialGrid(points=r, spacing=Spacing.UNIFORM),
        )
        with _cache_lock:
            oracle_cache[key] = result
        return result

    def compare_spectrum(
        self,
        table: Sequence[SpectrumEntry],
        oracle: OracleResult,
        p: KratzerParams,
        energy_tolerance: Optional[float] = None,
        overlap_tolerance: Optional[float] = None,
    ) -> ComparisonReport:
        """Relative energy error and overlap deficit 1 - |<alg|oracle>| per table row"""
        energy_tolerance = settings.TOL_ORACLE_ENERGY if energy_tolerance is None else energy_tolerance
        overlap_tolerance = settings.TOL_ORACLE_OVERLAP if overlap_tolerance is None else overlap_tolerance
        r = oracle.grid.points
        h = r[1] - r[0]

        rows = []
        for entry in table:
            if entry.l != oracle.l:
                raise UsageError(f"table row l={entry.l} compared against an oracle solved for l={oracle.l}")
            if entry.n >= len(oracle.energies):
                raise UsageError(f"oracle holds {len(oracle.energies)} state(s); row n={entry.n} has no partner")
            reference = oracle.energies[entry.n]
            relative = abs(entry.energy - reference) / abs(reference)
            algebraic = wavefunction_service.state(p, entry.n, entry.l).f(r)
            deficit = 1.0 - abs(float(h * np.dot(algebraic, oracle.states[entry.n])))
            rows.append(
                ComparisonRow(
                    n=entry.n,
                    l=entry.l,
                    closed_form=entry.energy,
                    oracle=reference,
                    relative_error=relative,
                    overlap_deficit=deficit,
                    passed=relative < energy_tolerance and deficit < overlap_tolerance,
                )
            )
        report = ComparisonReport(energy_tolerance=energy_tolerance, overlap_tolerance=overlap_tolerance, rows=rows)
        if not report.passed:
            logger.warning(f"{len(report.failed_rows)} row(s) disagree with the oracle for l={oracle.l}")
        return report


# Singleton instance
oracle_service = OracleService()
