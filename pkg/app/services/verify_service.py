"""
Verification Service
Runs the invariant suites and assembles a VerifyReport
"""
import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import UsageError
from app.schemas.algebra import Direction
from app.schemas.kratzer import KratzerParams
from app.schemas.verify import Bound, CheckResult, Suite, VerifyReport
from app.services.adjoint_service import adjoint_service
from app.services.algebra_service import algebra_service
from app.services.grid_operator_service import grid_operator_service
from app.services.kratzer_service import kratzer_service
from app.services.molecule_service import kratzer_params
from app.services.oracle_service import oracle_service
from app.services.spectrum_service import spectrum_service
from app.services.wavefunction_service import wavefunction_service

logger = logging.getLogger(__name__)

# Canonical model: De = re = mu = 1
CANONICAL = dict(alpha=-2.0, beta=1.0, mu=1.0)


class _Collector:
    """Accumulates checks for one suite, applying an optional tolerance override"""

    def __init__(self, suite: Suite, override: Optional[float]):
        self.suite = suite
        self.override = override
        self.checks: List[CheckResult] = []

    def upper(self, name: str, residual: float, tolerance: float, detail: Optional[str] = None) -> None:
        tolerance = tolerance if self.override is None else self.override
        residual = float(residual)
        self.checks.append(CheckResult(
            suite=self.suite.value, name=name, residual=residual, tolerance=tolerance,
            bound=Bound.UPPER, passed=math.isfinite(residual) and residual <= tolerance, detail=detail,
        ))

    def lower(self, name: str, measured: float, minimum: float, detail: Optional[str] = None) -> None:
        measured = float(measured)
        self.checks.append(CheckResult(
            suite=self.suite.value, name=name, residual=measured, tolerance=minimum,
            bound=Bound.LOWER, passed=measured > minimum, detail=detail,
        ))


class VerifyService:
    """Invariant suites: algebra, oracle, virial, adjoint, wavefunction"""

    def __init__(self) -> None:
        self._suites: Dict[Suite, Callable[[KratzerParams, int, _Collector, dict], None]] = {
            Suite.ALGEBRA: self._algebra,
            Suite.ORACLE: self._oracle,
            Suite.VIRIAL: self._virial,
            Suite.ADJOINT: self._adjoint,
            Suite.WAVEFUNCTION: self._wavefunction,
        }

    def run(
        self,
        suite: str,
        p: Optional[KratzerParams] = None,
        l: int = 0,
        tolerance: Optional[float] = None,
    ) -> VerifyReport:
        try:
            suite = Suite(suite)
        except ValueError:
            raise UsageError(f"unknown suite '{suite}' (choose from {', '.join(s.value for s in Suite)})")
        if tolerance is not None and not (tolerance > 0 and math.isfinite(tolerance)):
            raise UsageError(f"tolerance must be a positive number, got {tolerance}")
        p = p or kratzer_params(**CANONICAL)

        selected = list(self._suites) if suite is Suite.ALL else [suite]
        checks: List[CheckResult] = []
        info: dict = {}
        for name in selected:
            logger.info(f"Running verification suite '{name.value}'")
            collector = _Collector(name, tolerance)
            self._suites[name](p, l, collector, info)
            checks.extend(collector.checks)
            failed = sum(1 for c in collector.checks if not c.passed)
            logger.info(f"Suite '{name.value}': {len(collector.checks) - failed} passed, {failed} failed")

        return VerifyReport(
            suite=suite.value,
            parameters={"alpha": p.alpha, "beta": p.beta, "mu": p.mu, "hbar": p.hbar, "l": float(l)},
            checks=checks,
            info=info,
        )

    # ---------- Suites ----------

    def _algebra(self, p: KratzerParams, l: int, out: _Collector, info: dict) -> None:
        hbar = p.hbar
        eig = algebra_service.eigenvalues(p, l)
        q0, tau = eig.q0, eig.tau

        out.upper("q0 inverse: (q0 - hbar/2)^2 = tau + hbar^2/4",
                  abs((q0 - hbar / 2) ** 2 - (tau + hbar ** 2 / 4)) / max(1.0, tau), 1e-12)
        chain = max(
            abs(algebra_service.ladder_coefficient(q0, n + 1, Direction.DOWN, hbar).value
                - algebra_service.ladder_coefficient(q0, n, Direction.UP, hbar).value)
            for n in range(10)
        )
        out.upper("c-(n+1) = c+(n), n < 10", chain, 1e-9 * max(1.0, q0))

        grid = grid_operator_service.operator_grid_for(p, l)
        gens0 = grid_operator_service.generators_for_state(p, 0, l, grid)
        tests = grid_operator_service.default_test_functions(grid)
        for name in grid_operator_service.relations():
            out.upper(name, grid_operator_service.relation_residual(name, gens0, tests), settings.TOL_ALGEBRA,
                      detail=f"{grid.size} points")
            order, coarse, fine = grid_operator_service.convergence_order(
                name, gens0.sigma, tau, hbar=hbar, r_max=float(grid.points[-1])
            )
            out.lower(f"order {name}", order, settings.MIN_CONVERGENCE_ORDER,
                      detail=f"residual {coarse:.3e} -> {fine:.3e}")

        structural = abs(gens0.T1.matrix - (gens0.T3 - gens0.R).matrix)
        out.upper("T1 = T3 - R", structural.max() if structural.nnz else 0.0, 0.0)
        for name, value in grid_operator_service.casimir_form_residuals(gens0, tests).items():
            out.upper(name, value, settings.TOL_ALGEBRA)

        r = grid.points
        f0 = wavefunction_service.ground_state(p, l).f(r)
        out.upper("T- f0 = 0", grid_operator_service.annihilation_residual(gens0.Tminus, f0), settings.TOL_ALGEBRA)
        out.upper("T^2 f0 = q0(q0-hbar) f0",
                  grid_operator_service.eigen_residual(gens0.Casimir, f0, algebra_service.casimir_eigenvalue(q0, hbar)),
                  settings.TOL_ALGEBRA)
        for n in range(3):
            gens = gens0 if n == 0 else grid_operator_service.generators_for_state(p, n, l, grid)
            f_n = wavefunction_service.state(p, n, l).f(r)
            out.upper(f"T3(sigma_{n}) f_{n} = q_{n} f_{n}",
                      grid_operator_service.eigen_residual(gens.T3, f_n, algebra_service.q_n(q0, n, hbar)),
                      settings.TOL_ALGEBRA)
        for n in range(2):
            out.upper(f"T+ f_{n} = c+({n}) f_{n + 1} (common sigma)",
                      grid_operator_service.ladder_residual(q0, gens0.sigma, n, grid, hbar), settings.TOL_LADDER)
        info["chain_prefactor"] = [algebra_service.chain_prefactor(q0, n, hbar) for n in range(5)]

    def _oracle(self, p: KratzerParams, l: int, out: _Collector, info: dict, n_max: int = 4, l_max: int = 2) -> None:
        table = spectrum_service.spectrum_table(p, n_max, l_max)
        for level in range(l_max + 1):
            rows = [e for e in table if e.l == level]
            result = oracle_service.solve_bound_states(p, level, n_max + 1)
            report = oracle_service.compare_spectrum(rows, result, p)
            for row in report.rows:
                out.upper(f"energy n={row.n} l={row.l}", row.relative_error, settings.TOL_ORACLE_ENERGY,
                          detail=f"closed form {row.closed_form:.12g}, oracle {row.oracle:.12g}")
                out.upper(f"overlap n={row.n} l={row.l}", row.overlap_deficit, settings.TOL_ORACLE_OVERLAP)
            info[f"oracle_l{level}"] = report.model_dump()

        identity = 0.0
        consistency = 0.0
        for n in range(11):
            for level in range(11):
                e = spectrum_service.energy(p, n, level)
                identity = max(identity, abs(e - spectrum_service.closed_form_energy(p, n, level)) / abs(e))
                entry = spectrum_service.entry(p, n, level)
                expected = -p.mu * entry.sigma_n * p.alpha
                consistency = max(consistency, abs(entry.qn - expected) / expected)
        out.upper("expanded energy = -1/(2 mu sigma_n^2), n,l <= 10", identity, 1e-14)
        out.upper("q_n = -mu sigma_n alpha, n,l <= 10", consistency, 1e-14)

        coulomb = kratzer_params(alpha=p.alpha, beta=0.0, mu=p.mu, hbar=p.hbar)
        worst = 0.0
        for n in range(11):
            for level in range(11):
                exact = -p.mu * p.alpha ** 2 / (2.0 * p.hbar ** 2 * (n + level + 1) ** 2)
                worst = max(worst, abs(spectrum_service.energy(coulomb, n, level) - exact) / abs(exact))
        out.upper("Coulomb limit beta=0, n,l <= 10", worst, 1e-14)

    def _virial(self, p: KratzerParams, l: int, out: _Collector, info: dict) -> None:
        rs = np.geomspace(1e-2, 1e3, 61)
        worst = 0.0
        for r in rs:
            u, du, d2u = kratzer_service.potential_derivatives(p, r)
            magnitude = kratzer_service.virial_magnitude(r, u, du, d2u)
            worst = max(worst, abs(kratzer_service.kratzer_virial_residual(p, r)) / magnitude)
        out.upper("Euler operator annihilates U (analytic)", worst, settings.TOL_VIRIAL)

        # 1/r^3 at r=1: terms 12, -12, 2
        numeric = abs(kratzer_service.virial_residual(lambda x: x ** -3, 1.0) - 2.0)
        out.upper("Euler operator on 1/r^3 at r=1 (differences)", numeric,
                  settings.TOL_VIRIAL_DIFFERENCES * kratzer_service.virial_magnitude(1.0, 1.0, -3.0, 12.0))

        if p.beta > 0:
            re, ue = p.re, -p.depth
            worst = 0.0
            for r in rs:
                rebuilt = kratzer_service.reconstruct_potential(lambda x: 0.0, ue, re, r)
                direct = kratzer_service.potential(p, r)
                worst = max(worst, abs(rebuilt - direct) / max(abs(direct), 1e-300))
            out.upper("reconstruction with W=0 reproduces U", worst, settings.TOL_VIRIAL)
            at_min = kratzer_service.reconstruct_potential(lambda x: 0.0, ue, re, re)
            out.upper("reconstruction U(re) = Ue", abs(at_min - ue), 4.0 * np.finfo(float).eps * abs(ue))

    def _adjoint(self, p: KratzerParams, l: int, out: _Collector, info: dict) -> None:
        for name, value in adjoint_service.closure_residuals().items():
            out.upper(name, value, 0.0)
        for axis, value in adjoint_service.metric_residuals().items():
            out.upper(f"T{axis}^T eta + eta T{axis} = 0", value, 0.0)
        out.upper("commutator table = -(T_i)_jk", adjoint_service.table_structure_residual(), 0.0)
        out.upper("first-order action of I + eps T_i", adjoint_service.first_order_action_residual(), 1e-9)
        eps = 1e-3
        for axis in (1, 2, 3):
            out.upper(f"expm(eps T{axis}) - (I + eps T{axis})", adjoint_service.exponential_deviation(eps, axis), eps ** 2)

        rules = adjoint_service.selection_rules()
        out.upper("allowed delta n = {-1, 0, +1}", 0.0 if rules.allowed == [-1, 0, 1] else 1.0, 0.0,
                  detail=str(rules.allowed))
        out.upper("z channel = {0}", 0.0 if rules.per_coordinate["z"] == [0] else 1.0, 0.0)
        info["commutators"] = adjoint_service.coordinate_commutators(with_prefactor=True).rendered(p.hbar)
        info["selection_rules"] = rules.model_dump()

    def _wavefunction(self, p: KratzerParams, l: int, out: _Collector, info: dict, n_max: int = 4) -> None:
        states = [wavefunction_service.state(p, n, l) for n in range(n_max + 1)]
        ground = states[0]

        quadrature = wavefunction_service.quadrature_log_norm(ground.exponent_power, ground.scale)
        out.upper("ground normalization: closed form vs quadrature", abs(math.expm1(quadrature - ground.log_norm)),
                  settings.TOL_NORMALIZATION)

        grid = wavefunction_service.default_grid(states[-1])
        out.upper("ground first-order equation", wavefunction_service.ground_ode_residual(ground, grid), 1e-8)

        samples = [wavefunction_service.sample(state, grid) for state in states]
        for state, sampled in zip(states, samples):
            out.upper(f"node count n={state.n}", abs(len(state.nodes()) - state.n), 0.0)
            out.upper(f"sampled norm n={state.n}", abs(sampled.norm - 1.0), 1e-6)
            out.upper(f"Schrodinger residual n={state.n}",
                      wavefunction_service.schrodinger_residual(p, state, grid), 1e-6)
            out.upper(f"Laguerre coefficients n={state.n}", wavefunction_service.laguerre_residual(state), 1e-10)

        gram = wavefunction_service.gram_matrix(samples)
        out.upper(f"Gram matrix n=0..{n_max}", np.max(np.abs(gram - np.eye(len(samples)))), settings.TOL_ORTHONORMAL)

        if n_max >= 1:
            first = states[1]
            printed = wavefunction_service.printed_first_excited(first.q0, first.sigma, p.hbar)
            ratio = printed[1] / printed[0]
            out.upper("first excited state matches closed form",
                      abs(first.poly_coeffs[1] - ratio) / abs(ratio), 1e-12)
            info["first_excited_nodes"] = [float(x) for x in first.nodes()]
        info["ground_header"] = wavefunction_service.header(ground).model_dump()


# Singleton instance
verify_service = VerifyService()
