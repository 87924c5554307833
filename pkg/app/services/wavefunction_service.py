"""
Wavefunction Service
Ground state from the first-order lowering equation, excited states from the
raising recurrence, normalization, sampling and overlaps
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import simpson, trapezoid
from scipy.special import eval_genlaguerre, gamma, gammaln

from app.core.config import settings
from app.core.exceptions import DomainError, NumericError, RangeError, UsageError
from app.schemas.grid import RadialGrid
from app.schemas.kratzer import KratzerParams
from app.schemas.wavefunction import (
    BoundState,
    SampledWaveFunction,
    WaveFunctionHeader,
    WaveFunctionPoint,
    WaveFunctionResponse,
)
from app.services.algebra_service import algebra_service
from app.services.kratzer_service import kratzer_service
from app.services.quadrature import integrate
from app.services.spectrum_service import spectrum_service

logger = logging.getLogger(__name__)

# Gamma(2 q0/hbar) leaves the double range just above this exponent
GAMMA_OVERFLOW_THRESHOLD = 85.0


def ladder_polynomial(s: float, n: int) -> Polynomial:
    """
    Polynomial p_n(x) with f_n = x^s e^(-x) p_n(x), x = r/(hbar sigma), s = q0/hbar.

    Raising step: p_(k+1) = x p_k' + (2s + k - 2x) p_k, from p_0 = 1.
    Normalized to p_n(0) = 1.
    """
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    x = Polynomial([0.0, 1.0])
    p = Polynomial([1.0])
    for k in range(n):
        p = x * p.deriv() + (2.0 * s + k - 2.0 * x) * p
    return p / p.coef[0]


def generalized_laguerre(n: int, a: float) -> Polynomial:
    """L_n^(a)(y) from the three-term recurrence"""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    y = Polynomial([0.0, 1.0])
    previous, current = Polynomial([0.0]), Polynomial([1.0])
    for k in range(n):
        previous, current = current, ((2 * k + 1 + a - y) * current - (k + a) * previous) / (k + 1)
    return current


def ladder_factor(s: float, n: int, x) -> np.ndarray:
    """
    Values of ladder_polynomial(s, n) at x, through its closed form
    L_n^(2s-1)(2x) / L_n^(2s-1)(0) evaluated by recurrence on values.
    """
    a = 2.0 * s - 1.0
    return eval_genlaguerre(n, a, 2.0 * np.asarray(x, dtype=float)) / eval_genlaguerre(n, a, 0.0)


def _log_weighted_norm(s: float, n: int, power_shift: int = 0) -> float:
    """
    log of the integral over x > 0 of x^(2s + power_shift) e^(-2x) p_n(x)^2.

    The integrand is divided by its largest sampled value so that quadrature
    sees an O(1) function whatever the size of s and of p_n near the peak.
    """
    m = 2.0 * s + power_shift
    peak = m / 2.0
    upper = peak + 2.0 * n + 12.0 * math.sqrt(peak + n) + 40.0

    xs = np.linspace(upper / 4096.0, upper, 4096)
    with np.errstate(divide="ignore"):
        log_terms = m * np.log(xs) - 2.0 * xs + 2.0 * np.log(np.abs(ladder_factor(s, n, xs)))
    shift = float(np.max(log_terms))

    def integrand(x: float) -> float:
        value = float(ladder_factor(s, n, x))
        if x <= 0 or value == 0.0:
            return 0.0
        return math.exp(m * math.log(x) - 2.0 * x + 2.0 * math.log(abs(value)) - shift)

    value = integrate(integrand, 0.0, upper, points=[peak])
    if value <= 0:
        raise NumericError(f"nonpositive norm integral {value:g}")
    return shift + math.log(value)


class WaveFunctionService:
    """Closed-form bound states f_n(r) = r Q_n(r)"""

    # ---------- Normalization ----------

    def log_normalization_constant(self, q0: float, sigma: float, hbar: Optional[float] = None) -> float:
        """log A, A = [(2q0/hbar) (hbar sigma/2)^(2q0/hbar+1) Gamma(2q0/hbar)]^(-1/2)"""
        hbar = settings.HBAR if hbar is None else hbar
        if q0 < hbar * (1.0 - 1e-12) or sigma <= 0:
            raise DomainError(f"normalization needs q0 >= hbar and sigma > 0, got q0={q0:g}, sigma={sigma:g}")
        s = q0 / hbar
        return -0.5 * (math.log(2.0 * s) + (2.0 * s + 1.0) * math.log(hbar * sigma / 2.0) + gammaln(2.0 * s))

    def normalization_constant(self, q0: float, sigma: float, hbar: Optional[float] = None) -> float:
        """
        Linear form of the ground-state constant A.

        Raises:
            RangeError: q0/hbar above GAMMA_OVERFLOW_THRESHOLD, or a non-finite product
        """
        hbar = settings.HBAR if hbar is None else hbar
        if q0 < hbar * (1.0 - 1e-12) or sigma <= 0:
            raise DomainError(f"normalization needs q0 >= hbar and sigma > 0, got q0={q0:g}, sigma={sigma:g}")
        s = q0 / hbar
        if s > GAMMA_OVERFLOW_THRESHOLD:
            raise RangeError(
                f"q0/hbar={s:g} exceeds {GAMMA_OVERFLOW_THRESHOLD:g}; use log_normalization_constant",
                threshold=GAMMA_OVERFLOW_THRESHOLD,
            )
        product = 2.0 * s * (hbar * sigma / 2.0) ** (2.0 * s + 1.0) * gamma(2.0 * s)
        if not math.isfinite(product) or product <= 0:
            raise RangeError(f"normalization product out of range for q0={q0:g}, sigma={sigma:g}",
                             threshold=GAMMA_OVERFLOW_THRESHOLD)
        return product ** -0.5

    def quadrature_log_norm(self, s: float, scale: float, n: int = 0) -> float:
        """log_norm (r-space convention of BoundState) fixing the integral of f^2 dr to 1"""
        log_c = -0.5 * (math.log(scale) + _log_weighted_norm(s, n))
        return log_c - s * math.log(scale)

    # ---------- States ----------

    def _build(self, p: KratzerParams, n: int, l: int, quadrature: bool) -> BoundState:
        eig = algebra_service.eigenvalues(p, l)
        sigma = spectrum_service.sigma_n(p, n, l)
        s = eig.q0 / p.hbar
        scale = p.hbar * sigma
        p_x = ladder_polynomial(s, n)
        if quadrature:
            log_norm = self.quadrature_log_norm(s, scale, n)
        else:
            log_norm = self.log_normalization_constant(eig.q0, sigma, p.hbar)
        coeffs = [float(c) / scale ** j for j, c in enumerate(p_x.coef)]
        return BoundState(
            n=n,
            l=l,
            q0=eig.q0,
            exponent_power=s,
            scale=scale,
            sigma=sigma,
            energy=-1.0 / (2.0 * p.mu * sigma ** 2),
            poly_coeffs=coeffs,
            log_norm=log_norm,
        )

    def ground_state(self, p: KratzerParams, l: int) -> BoundState:
        """Q_0(r) = A r^(q0/hbar - 1) e^(-r/(hbar sigma_0))"""
        return self._build(p, 0, l, quadrature=False)

    def excited_state(self, p: KratzerParams, n: int, l: int) -> BoundState:
        """State n >= 1 from the raising recurrence with sigma -> sigma_n, normalized by quadrature"""
        if n < 1:
            raise DomainError(f"excited states need n >= 1, got {n}")
        return self._build(p, n, l, quadrature=True)

    def state(self, p: KratzerParams, n: int, l: int) -> BoundState:
        return self.ground_state(p, l) if n == 0 else self.excited_state(p, n, l)

    def fixed_sigma_samples(
        self, q0: float, sigma: float, n: int, r: np.ndarray, hbar: Optional[float] = None
    ) -> np.ndarray:
        """
        f-samples of the n-th T3 eigenstate at a common sigma, normalized under
        the integral of f^2 dr/r.
        """
        hbar = settings.HBAR if hbar is None else hbar
        s = q0 / hbar
        log_c = -0.5 * _log_weighted_norm(s, n, power_shift=-1)
        x = np.asarray(r, dtype=float) / (hbar * sigma)
        return np.exp(log_c + s * np.log(x) - x) * ladder_factor(s, n, x)

    # ---------- Sampling ----------

    def default_grid(self, state: BoundState, points: Optional[int] = None) -> RadialGrid:
        """Log-spaced grid over [low*scale, high*scale], widened for large q0/hbar"""
        reach = state.exponent_power + state.n
        high = max(settings.WAVEFUNCTION_GRID_HIGH, reach + 6.0 * math.sqrt(reach) + 10.0)
        return RadialGrid.log_uniform(
            settings.WAVEFUNCTION_GRID_LOW * state.scale,
            high * state.scale,
            points or settings.WAVEFUNCTION_GRID_POINTS,
        )

    def requested_grid(
        self,
        state: BoundState,
        r_min: Optional[float] = None,
        r_max: Optional[float] = None,
        points: Optional[int] = None,
        spacing: str = "log",
    ) -> RadialGrid:
        """Grid from explicit bounds, falling back to default_grid for unset ones"""
        default = self.default_grid(state, points)
        low = float(default.points[0]) if r_min is None else r_min
        high = float(default.points[-1]) if r_max is None else r_max
        count = points or settings.WAVEFUNCTION_GRID_POINTS
        if low <= 0 or high < low or (high == low and count != 1):
            raise UsageError(f"invalid sampling range [{low:g}, {high:g}] with {count} point(s)")
        if spacing == "uniform":
            return RadialGrid.uniform(low, high, count)
        return RadialGrid.log_uniform(low, high, count)

    @staticmethod
    def _integrate_samples(y: np.ndarray, r: np.ndarray) -> float:
        if r.size >= 3:
            return float(simpson(y, x=r))
        return float(trapezoid(y, x=r))

    def sample(self, state: BoundState, grid: RadialGrid) -> SampledWaveFunction:
        r = grid.points
        values = state.Q(r)
        if np.any(np.isnan(values)):
            raise NumericError(f"NaN in samples of state n={state.n}, l={state.l}")
        norm = self._integrate_samples(values ** 2 * r ** 2, r)
        return SampledWaveFunction(grid=grid, values=values, norm=norm, n=state.n, l=state.l)

    def overlap(self, a: SampledWaveFunction, b: SampledWaveFunction) -> float:
        if not a.grid.same_as(b.grid):
            raise UsageError("overlap needs both wavefunctions on the same grid")
        r = a.grid.points
        return self._integrate_samples(a.values * b.values * r ** 2, r)

    def gram_matrix(self, samples: Sequence[SampledWaveFunction]) -> np.ndarray:
        size = len(samples)
        gram = np.empty((size, size))
        for i in range(size):
            for j in range(i, size):
                gram[i, j] = gram[j, i] = self.overlap(samples[i], samples[j])
        return gram

    # ---------- Residual checks ----------

    def ground_ode_residual(self, state: BoundState, grid: RadialGrid) -> float:
        """max |f0' + (1/(hbar sigma) - q0/(hbar r)) f0| / max |f0| with analytic derivatives"""
        r = grid.points
        f = state.f(r)
        residual = state.df(r) + (1.0 / state.scale - state.exponent_power / r) * f
        return float(np.max(np.abs(residual)) / np.max(np.abs(f)))

    def schrodinger_residual(self, p: KratzerParams, state: BoundState, grid: RadialGrid) -> float:
        """||H f - eps f|| / ||eps f|| with H = -(hbar^2/2mu) d^2/dr^2 + U_eff"""
        r = grid.points
        f = state.f(r)
        hf = -(p.hbar ** 2 / (2.0 * p.mu)) * state.d2f(r) + kratzer_service.effective_potential(p, state.l, r) * f
        return float(np.linalg.norm(hf - state.energy * f) / np.linalg.norm(state.energy * f))

    def laguerre_residual(self, state: BoundState) -> float:
        """
        Largest relative coefficient difference between P(r) and
        L_n^(2q0/hbar - 1)(2r/(hbar sigma_n)), both scaled to unit constant term.
        """
        lag = generalized_laguerre(state.n, 2.0 * state.exponent_power - 1.0)
        coeffs = np.array([c * (2.0 / state.scale) ** j for j, c in enumerate(lag.coef)])
        coeffs = coeffs / coeffs[0]
        ours = np.asarray(state.poly_coeffs)
        return float(np.max(np.abs(ours - coeffs) / np.maximum(np.abs(coeffs), 1e-300)))

    @staticmethod
    def printed_first_excited(q0: float, sigma: float, hbar: float = 1.0) -> List[float]:
        """
        Ascending r-coefficients of r^(1-q0/hbar) e^(r/(hbar sigma)) Q_1 / A from the
        closed form 2[(q0/2hbar)^(1/2)/r - (1/sigma)(1/(2 q0 hbar))^(1/2)] A r^(q0/hbar) e^(-r/(hbar sigma)).
        """
        return [2.0 * math.sqrt(q0 / (2.0 * hbar)), -2.0 / sigma * math.sqrt(1.0 / (2.0 * q0 * hbar))]

    # ---------- Export ----------

    def header(self, state: BoundState) -> WaveFunctionHeader:
        return WaveFunctionHeader(
            n=state.n,
            l=state.l,
            sigma_n=state.sigma,
            q0=state.q0,
            A=state.norm_constant if state.log_norm < 700.0 else None,
            log_A=state.log_norm,
            energy=state.energy,
        )

    def response(self, state: BoundState, sampled: SampledWaveFunction) -> WaveFunctionResponse:
        return WaveFunctionResponse(
            header=self.header(state),
            samples=[WaveFunctionPoint(r=float(r), Q=float(q)) for r, q in zip(sampled.grid.points, sampled.values)],
        )


# Singleton instance
wavefunction_service = WaveFunctionService()
