"""
Adjoint Representation Service
3x3 generators of so(2,1), finite transformations, coordinate commutators
and the selection rules derived from them
"""
import logging
from typing import Dict, List, Optional

import numpy as np
from scipy.linalg import expm

from app.core.exceptions import DomainError
from app.schemas.adjoint import COORDINATES, CoordinateCommutatorTable, SelectionRules

logger = logging.getLogger(__name__)

AXES = (1, 2, 3)

# Invariant form x^2 + y^2 - z^2
METRIC = np.diag([1, 1, -1])

_GENERATORS: Dict[int, np.ndarray] = {
    1: np.array([[0, 0, 0], [0, 0, -1], [0, -1, 0]], dtype=np.int64),
    2: np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=np.int64),
    3: np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=np.int64),
}

# [T_i, x_j] = sum_k c[i][j][k] x_k, no i*hbar prefactor
_COORDINATE_TABLE: Dict[int, List[List[int]]] = {
    1: [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    2: [[0, 0, -1], [0, 0, 0], [-1, 0, 0]],
    3: [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
}


def _require_axis(axis: int) -> None:
    if axis not in AXES:
        raise DomainError(f"axis must be one of 1, 2, 3, got {axis}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


class AdjointService:
    """Exact integer adjoint-representation machinery"""

    def adjoint_generator(self, axis: int) -> np.ndarray:
        _require_axis(axis)
        return _GENERATORS[axis].copy()

    def finite_transformation(self, epsilon: float, axis: int) -> np.ndarray:
        """First-order group element I + epsilon*T_axis"""
        if abs(epsilon) >= 1:
            raise DomainError(f"|epsilon| must be below 1 for the first-order form, got {epsilon:g}")
        return np.eye(3) + epsilon * self.adjoint_generator(axis)

    def exponential_deviation(self, epsilon: float, axis: int) -> float:
        """||expm(epsilon*T) - (I + epsilon*T)||, which is O(epsilon^2)"""
        exact = expm(epsilon * self.adjoint_generator(axis).astype(float))
        return float(np.linalg.norm(exact - self.finite_transformation(epsilon, axis)))

    def coordinate_commutators(self, with_prefactor: bool = False) -> CoordinateCommutatorTable:
        return CoordinateCommutatorTable(
            coeffs={axis: [list(row) for row in rows] for axis, rows in _COORDINATE_TABLE.items()},
            with_prefactor=with_prefactor,
        )

    # ---------- Structural checks (exact integer arithmetic) ----------

    def closure_residuals(self) -> Dict[str, int]:
        """[T1,T2] = -T3, [T2,T3] = T1, [T3,T1] = T2; max abs entry of each difference"""
        t1, t2, t3 = (_GENERATORS[a] for a in AXES)
        return {
            "[T1,T2]=-T3": int(np.abs(commutator(t1, t2) + t3).max()),
            "[T2,T3]=T1": int(np.abs(commutator(t2, t3) - t1).max()),
            "[T3,T1]=T2": int(np.abs(commutator(t3, t1) - t2).max()),
        }

    def metric_residuals(self) -> Dict[int, int]:
        """T^T eta + eta T for each generator"""
        return {axis: int(np.abs(t.T @ METRIC + METRIC @ t).max()) for axis, t in _GENERATORS.items()}

    def table_structure_residual(self, table: Optional[CoordinateCommutatorTable] = None) -> int:
        """
        c[i][j][k] + (T_i)[j][k], maximized over all entries.

        Zero when r_j + epsilon [r_j, T_i] reproduces (I + epsilon T_i) r.
        """
        table = table or self.coordinate_commutators()
        worst = 0
        for axis in AXES:
            c = np.array(table.coeffs[axis], dtype=np.int64)
            worst = max(worst, int(np.abs(c + _GENERATORS[axis]).max()))
        return worst

    def first_order_action_residual(self, epsilon: float = 1e-3) -> float:
        """
        Apply I + epsilon*T_i to (x, y, z) and compare the first-order change of
        each coordinate with -epsilon times the commutator table entry.
        """
        table = self.coordinate_commutators()
        worst = 0.0
        for axis in AXES:
            change = (self.finite_transformation(epsilon, axis) - np.eye(3)) / epsilon
            expected = -np.array(table.coeffs[axis], dtype=float)
            worst = max(worst, float(np.abs(change - expected).max()))
        return worst

    # ---------- Selection rules ----------

    def selection_rules(self, table: Optional[CoordinateCommutatorTable] = None) -> SelectionRules:
        """
        Derive the allowed changes of the vibrational quantum number.

        With [T3, x_j] = i hbar sum_k S_jk x_k and T3 eigenvalues q0 + n hbar,
        matrix elements X_j = <n'|x_j|n> obey (n' - n) X = i S X, so the allowed
        delta n are the real integral eigenvalues of iS. A coordinate carries a
        given delta n when its component of the eigenvector is nonzero.
        """
        table = table or self.coordinate_commutators()
        S = np.array(table.coeffs[3], dtype=float)
        values, vectors = np.linalg.eig(1j * S)

        per_coordinate: Dict[str, set] = {name: set() for name in COORDINATES}
        for index, value in enumerate(values):
            if abs(value.imag) > 1e-9 or abs(value.real - round(value.real)) > 1e-9:
                logger.debug(f"discarding non-integral eigenvalue {value}")
                continue
            delta = int(round(value.real))
            vector = vectors[:, index]
            for k, name in enumerate(COORDINATES):
                if abs(vector[k]) > 1e-9:
                    per_coordinate[name].add(delta)

        allowed = sorted(set().union(*per_coordinate.values()))
        return SelectionRules(
            per_coordinate={name: sorted(deltas) for name, deltas in per_coordinate.items()},
            allowed=allowed,
        )


# Singleton instance
adjoint_service = AdjointService()
