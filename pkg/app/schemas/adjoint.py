"""
Adjoint Representation Schemas
"""
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict

COORDINATES: Tuple[str, str, str] = ("x", "y", "z")


class CoordinateCommutatorTable(BaseModel):
    """
    [T_i, x_j] = sum_k coeffs[i][j][k] x_k in the no-prefactor convention.

    axes are 1-based generator indices, coordinates 0-based (x, y, z).
    """
    model_config = ConfigDict(frozen=True)

    coeffs: Dict[int, List[List[int]]]
    with_prefactor: bool = False

    def entry(self, axis: int, coordinate: str) -> Dict[str, int]:
        """Nonzero expansion of [T_axis, coordinate] as {coordinate: coefficient}"""
        row = self.coeffs[axis][COORDINATES.index(coordinate)]
        return {COORDINATES[k]: c for k, c in enumerate(row) if c != 0}

    def rendered(self, hbar: float = 1.0) -> Dict[str, str]:
        """Human-readable table, with i*hbar restored when with_prefactor is set"""
        prefix = f"i*{hbar:g}*" if self.with_prefactor else ""
        out: Dict[str, str] = {}
        for axis in sorted(self.coeffs):
            for coordinate in COORDINATES:
                terms = self.entry(axis, coordinate)
                if not terms:
                    text = "0"
                else:
                    parts = []
                    for name, c in terms.items():
                        sign = "-" if c < 0 else ""
                        mag = "" if abs(c) == 1 else f"{abs(c)}*"
                        parts.append(f"{sign}{prefix}{mag}{name}")
                    text = " + ".join(parts)
                out[f"[T{axis},{coordinate}]"] = text
        return out


class SelectionRules(BaseModel):
    """Allowed vibrational quantum-number changes per coordinate"""
    per_coordinate: Dict[str, List[int]]
    allowed: List[int]
