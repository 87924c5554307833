"""
Verification Schemas
Report format shared by the CLI verify command and the HTTP API
"""
import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field


class Suite(str, enum.Enum):
    ALGEBRA = "algebra"
    ORACLE = "oracle"
    VIRIAL = "virial"
    ADJOINT = "adjoint"
    WAVEFUNCTION = "wavefunction"
    ALL = "all"


class Bound(str, enum.Enum):
    """Whether the residual must stay below (upper) or above (lower) the tolerance"""
    UPPER = "upper"
    LOWER = "lower"


class CheckResult(BaseModel):
    """One named check: measured residual against its tolerance"""
    suite: str
    name: str
    residual: float
    tolerance: float
    bound: Bound = Bound.UPPER
    passed: bool
    detail: Optional[str] = None


class VerifyReport(BaseModel):
    """Verification run output"""
    suite: str
    parameters: Dict[str, float]
    checks: List[CheckResult] = Field(default_factory=list)
    info: Dict[str, object] = Field(default_factory=dict)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]
