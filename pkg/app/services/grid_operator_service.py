"""
Grid Operator Service
Finite-difference representation of R, P and the so(2,1) generators on
f-samples, with residual checks of the algebraic relations
"""
import logging
import math
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
from scipy import sparse

from app.core.config import settings
from app.core.exceptions import UsageError
from app.schemas.algebra import Direction
from app.schemas.grid import GeneratorSet, GridOperator, RadialGrid, Spacing, TestFunctionSet
from app.schemas.kratzer import KratzerParams
from app.services.algebra_service import algebra_service
from app.services.kratzer_service import kratzer_service
from app.services.spectrum_service import spectrum_service
from app.services.wavefunction_service import wavefunction_service

logger = logging.getLogger(__name__)

MIN_OPERATOR_POINTS = 64

# 4th-order first-derivative stencils, in units of 1/(12h)
_CENTRAL = (1.0, -8.0, 0.0, 8.0, -1.0)
_EDGE_0 = (-25.0, 48.0, -36.0, 16.0, -3.0)
_EDGE_1 = (-3.0, -10.0, 18.0, -6.0, 1.0)

Scale = Union[float, complex]
Relation = Callable[[GeneratorSet], Tuple[GridOperator, GridOperator, Optional[GridOperator], Scale]]


def _uniform_derivative(size: int, h: float) -> sparse.csr_matrix:
    offsets = (-2, -1, 0, 1, 2)
    bands = [np.full(size - abs(k), c / (12.0 * h)) for k, c in zip(offsets, _CENTRAL)]
    D = sparse.diags(bands, offsets, shape=(size, size), format="lil")
    for row, stencil in ((0, _EDGE_0), (1, _EDGE_1)):
        D[row, :] = 0.0
        D[size - 1 - row, :] = 0.0
        for j, c in enumerate(stencil):
            D[row, j] = c / (12.0 * h)
            D[size - 1 - row, size - 1 - j] = -c / (12.0 * h)
    return D.tocsr()


class GridOperatorService:
    """Numerical so(2,1) representation on radial grids"""

    # ---------- Grids and derivatives ----------

    def canonical_grid(self, points: Optional[int] = None, r_max: Optional[float] = None) -> RadialGrid:
        """Uniform grid r_i = i*h, i = 1..points, h = r_max/points"""
        points = points or settings.OPERATOR_GRID_POINTS
        r_max = r_max or settings.OPERATOR_GRID_R_MAX
        return RadialGrid.uniform(r_max / points, r_max, points)

    def derivative_matrix(self, grid: RadialGrid) -> sparse.csr_matrix:
        """d/dr with 4th-order central differences and one-sided edge closures"""
        n = grid.size
        if n < MIN_OPERATOR_POINTS:
            raise UsageError(f"operator grids need at least {MIN_OPERATOR_POINTS} points, got {n}")
        r = grid.points
        if grid.spacing is Spacing.UNIFORM:
            return _uniform_derivative(n, (r[-1] - r[0]) / (n - 1))
        if grid.spacing is Spacing.LOG_UNIFORM:
            du = (math.log(r[-1]) - math.log(r[0])) / (n - 1)
            return (sparse.diags(1.0 / r) @ _uniform_derivative(n, du)).tocsr()
        raise UsageError("derivative operators need a uniform or log-uniform grid")

    # ---------- Operators ----------

    def build_observables(
        self, grid: RadialGrid, sigma: float, hbar: Optional[float] = None
    ) -> Tuple[GridOperator, GridOperator]:
        """R = r/sigma, P = -i hbar sigma d/dr"""
        hbar = settings.HBAR if hbar is None else hbar
        R = GridOperator(matrix=sparse.diags(grid.points / sigma), grid=grid, label="R")
        P = GridOperator(matrix=(-1j * hbar * sigma) * self.derivative_matrix(grid), grid=grid, label="P")
        return R, P

    def build_generators(
        self, grid: RadialGrid, sigma: float, tau: float, hbar: Optional[float] = None
    ) -> GeneratorSet:
        """
        T3 = (R P^2 + tau R^-1 + R)/2, T1 = T3 - R, T2 = R P,
        T+/- = T1 +/- i T2, Casimir = -T1^2 - T2^2 + T3^2
        """
        hbar = settings.HBAR if hbar is None else hbar
        R, P = self.build_observables(grid, sigma, hbar)
        R_inv = GridOperator(matrix=sparse.diags(sigma / grid.points), grid=grid, label="R^-1")

        T3 = (R @ P @ P + R_inv.scaled(tau) + R).scaled(0.5, "T3")
        T1 = GridOperator(matrix=(T3 - R).matrix, grid=grid, label="T1")
        T2 = GridOperator(matrix=(R @ P).matrix, grid=grid, label="T2")
        Tplus = GridOperator(matrix=(T1 + T2.scaled(1j)).matrix, grid=grid, label="T+")
        Tminus = GridOperator(matrix=(T1 - T2.scaled(1j)).matrix, grid=grid, label="T-")
        casimir = GridOperator(matrix=(-(T1 @ T1) - T2 @ T2 + T3 @ T3).matrix, grid=grid, label="T^2")
        logger.debug(f"Built generators on {grid.size} points (sigma={sigma:g}, tau={tau:g})")
        return GeneratorSet(
            grid=grid, sigma=sigma, tau=tau, hbar=hbar,
            R=R, P=P, T1=T1, T2=T2, T3=T3, Tplus=Tplus, Tminus=Tminus, Casimir=casimir,
        )

    def operator_grid_for(self, p: KratzerParams, l: int, points: Optional[int] = None, top_n: int = 2) -> RadialGrid:
        """
        Canonical uniform grid stretched to the ground-state decay length, wide
        enough for the states up to top_n (40 units for the canonical model).
        """
        q0 = algebra_service.eigenvalues(p, l).q0
        reach = q0 / p.hbar + top_n
        scale = p.hbar * spectrum_service.sigma_n(p, 0, l)
        high = max(settings.OPERATOR_GRID_R_MAX, reach + 6.0 * math.sqrt(reach) + 10.0)
        return self.canonical_grid(points=points, r_max=high * scale)

    def generators_for_state(
        self, p: KratzerParams, n: int, l: int, grid: Optional[RadialGrid] = None
    ) -> GeneratorSet:
        """Generators with sigma = sigma_n and tau of rotational level l"""
        return self.build_generators(
            grid or self.canonical_grid(),
            spectrum_service.sigma_n(p, n, l),
            kratzer_service.tau(p, l).tau,
            p.hbar,
        )

    # ---------- Norms ----------

    def interior_mask(self, grid: RadialGrid, fraction: Optional[float] = None) -> np.ndarray:
        """True except for the outer `fraction` of points at each end"""
        fraction = settings.OPERATOR_INTERIOR_FRACTION if fraction is None else fraction
        skip = int(math.ceil(fraction * grid.size))
        mask = np.zeros(grid.size, dtype=bool)
        mask[skip:grid.size - skip] = True
        return mask

    def interior_norm(self, v: np.ndarray, mask: np.ndarray) -> float:
        return float(np.linalg.norm(np.asarray(v)[mask]))

    # ---------- Test functions ----------

    def default_test_functions(self, grid: RadialGrid) -> TestFunctionSet:
        """(r/a)^8 e^(-2r/a) and Gaussian bumps, a = r_max/40; all negligible at both grid ends"""
        a = grid.points[-1] / 40.0
        return (
            self.bump_test_functions(grid)
            .add("r^8 exp(-2r)", lambda r: (r / a) ** 8 * np.exp(-2.0 * r / a))
        )

    def bump_test_functions(self, grid: RadialGrid) -> TestFunctionSet:
        """r^2 exp(-(r-c)^2/2w^2) at c = 12, 16, 20 (w = 2, 1.5, 2.5) on a 40-unit span, scaled to r_max"""
        a = grid.points[-1] / 40.0

        def bump(center: float, width: float):
            return lambda r: (r / a) ** 2 * np.exp(-((r / a - center) ** 2) / (2.0 * width ** 2))

        return (
            TestFunctionSet(grid=grid)
            .add("bump(12,2)", bump(12.0, 2.0))
            .add("bump(16,1.5)", bump(16.0, 1.5))
            .add("bump(20,2.5)", bump(20.0, 2.5))
        )

    # ---------- Residuals ----------

    def commutator_residual(
        self,
        A: GridOperator,
        B: GridOperator,
        expected: Optional[GridOperator],
        scale: Scale,
        tests: TestFunctionSet,
    ) -> float:
        """max over tests of ||(AB - BA - scale*expected) f|| / ||f|| on interior points"""
        for op in (B, expected):
            if op is not None and not A.grid.same_as(op.grid):
                raise UsageError(f"operator '{op.label}' lives on a different grid than '{A.label}'")
        if not A.grid.same_as(tests.grid):
            raise UsageError("test functions live on a different grid than the operators")

        mask = self.interior_mask(A.grid)
        worst = 0.0
        for test in tests.functions:
            f = test.values
            value = A(B(f)) - B(A(f))
            if expected is not None:
                value = value - scale * expected(f)
            worst = max(worst, self.interior_norm(value, mask) / self.interior_norm(f, mask))
        return worst

    def annihilation_residual(self, Tminus: GridOperator, f0: np.ndarray) -> float:
        """||T- f0|| / ||f0|| on interior points"""
        mask = self.interior_mask(Tminus.grid)
        return self.interior_norm(Tminus(f0), mask) / self.interior_norm(f0, mask)

    def eigen_residual(self, op: GridOperator, f: np.ndarray, lam: Scale) -> float:
        """||Op f - lam f|| / ||f|| on interior points"""
        mask = self.interior_mask(op.grid)
        return self.interior_norm(op(f) - lam * np.asarray(f), mask) / self.interior_norm(f, mask)

    def casimir_form_residuals(self, gens: GeneratorSet, tests: TestFunctionSet) -> Dict[str, float]:
        """
        -T1^2 - T2^2 + T3^2 against -T+T- + (T3 - hbar)T3 and -T-T+ + (T3 + hbar)T3,
        max relative interior difference over tests.
        """
        mask = self.interior_mask(gens.grid)
        hbar = gens.hbar
        out = {"T^2=-T+T-+(T3-hbar)T3": 0.0, "T^2=-T-T++(T3+hbar)T3": 0.0}
        for test in tests.functions:
            f = test.values
            casimir = gens.Casimir(f)
            t3f = gens.T3(f)
            lowered = -gens.Tplus(gens.Tminus(f)) + gens.T3(t3f) - hbar * t3f
            raised = -gens.Tminus(gens.Tplus(f)) + gens.T3(t3f) + hbar * t3f
            norm = self.interior_norm(f, mask)
            out["T^2=-T+T-+(T3-hbar)T3"] = max(out["T^2=-T+T-+(T3-hbar)T3"], self.interior_norm(casimir - lowered, mask) / norm)
            out["T^2=-T-T++(T3+hbar)T3"] = max(out["T^2=-T-T++(T3+hbar)T3"], self.interior_norm(casimir - raised, mask) / norm)
        return out

    def ladder_residual(
        self, q0: float, sigma: float, n: int, grid: Optional[RadialGrid] = None, hbar: Optional[float] = None
    ) -> float:
        """
        ||T+ f_n - c+(n) f_(n+1)|| / ||f_n|| for the common-sigma T3 eigenstates,
        normalized under the integral of f^2 dr/r.
        """
        hbar = settings.HBAR if hbar is None else hbar
        grid = grid or self.canonical_grid()
        tau = algebra_service.casimir_eigenvalue(q0, hbar)
        gens = self.build_generators(grid, sigma, tau, hbar)
        f_n = wavefunction_service.fixed_sigma_samples(q0, sigma, n, grid.points, hbar)
        f_next = wavefunction_service.fixed_sigma_samples(q0, sigma, n + 1, grid.points, hbar)
        c_plus = algebra_service.ladder_coefficient(q0, n, Direction.UP, hbar).value
        mask = self.interior_mask(grid)
        return self.interior_norm(gens.Tplus(f_n) - c_plus * f_next, mask) / self.interior_norm(f_n, mask)

    # ---------- Relations and convergence ----------

    def relations(self) -> Dict[str, Relation]:
        """Commutation relations as (A, B, expected, scale) with [A,B] = scale*expected"""
        return {
            "[R,P]=i*hbar": lambda g: (g.R, g.P, GridOperator.identity(g.grid), 1j * g.hbar),
            "[T1,T2]=-i*hbar*T3": lambda g: (g.T1, g.T2, g.T3, -1j * g.hbar),
            "[T2,T3]=i*hbar*T1": lambda g: (g.T2, g.T3, g.T1, 1j * g.hbar),
            "[T3,T1]=i*hbar*T2": lambda g: (g.T3, g.T1, g.T2, 1j * g.hbar),
            "[T3,T+]=hbar*T+": lambda g: (g.T3, g.Tplus, g.Tplus, g.hbar),
            "[T3,T-]=-hbar*T-": lambda g: (g.T3, g.Tminus, g.Tminus, -g.hbar),
            "[T+,T-]=-2*hbar*T3": lambda g: (g.Tplus, g.Tminus, g.T3, -2.0 * g.hbar),
        }

    def relation_residual(self, name: str, gens: GeneratorSet, tests: Optional[TestFunctionSet] = None) -> float:
        relation = self.relations().get(name)
        if relation is None:
            raise UsageError(f"unknown relation '{name}'")
        A, B, expected, scale = relation(gens)
        return self.commutator_residual(A, B, expected, scale, tests or self.default_test_functions(gens.grid))

    def convergence_order(
        self,
        name: str,
        sigma: float = 1.0,
        tau: float = 2.0,
        base_points: Optional[int] = None,
        hbar: Optional[float] = None,
        r_max: Optional[float] = None,
    ) -> Tuple[float, float, float]:
        """
        Measured order log2(coarse/fine) of a relation's residual when the
        spacing is halved.

        Returns:
            (order, coarse residual, fine residual)
        """
        coarse_grid = self.canonical_grid(points=base_points or settings.OPERATOR_CONVERGENCE_POINTS, r_max=r_max)
        residuals = []
        for grid in (coarse_grid, coarse_grid.refined()):
            gens = self.build_generators(grid, sigma, tau, hbar)
            residuals.append(self.relation_residual(name, gens, self.bump_test_functions(grid)))
        coarse, fine = residuals
        if fine == 0.0:
            return math.inf, coarse, fine
        return math.log2(coarse / fine), coarse, fine


# Singleton instance
grid_operator_service = GridOperatorService()
