"""
Oracle Solver Schemas
"""
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from app.schemas.grid import RadialGrid


class GridSpec(BaseModel):
    """Solve box for the finite-difference eigensolver; None fields take the defaults"""
    model_config = ConfigDict(frozen=True)

    r_min: Optional[float] = Field(None, ge=0)
    r_max: Optional[float] = Field(None, gt=0)
    points: Optional[int] = Field(None, ge=16)


class OracleResult(BaseModel):
    """Lowest eigenpairs of the discretized radial equation for one l"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    l: int
    energies: List[float] = Field(..., description="Richardson-extrapolated energies, ascending")
    raw_energies: List[float] = Field(..., description="Fine-grid energies before extrapolation")
    estimated_error: List[float]
    states: np.ndarray = Field(..., description="(count, points) normalized f-samples")
    grid: RadialGrid


class ComparisonRow(BaseModel):
    n: int
    l: int
    closed_form: float
    oracle: float
    relative_error: float
    overlap_deficit: float
    passed: bool


class ComparisonReport(BaseModel):
    energy_tolerance: float
    overlap_tolerance: float
    rows: List[ComparisonRow]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failed_rows(self) -> List[ComparisonRow]:
        return [row for row in self.rows if not row.passed]
