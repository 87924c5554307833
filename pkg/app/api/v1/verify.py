"""
Verification API endpoints
Same report as the CLI verify command
"""
import logging
from typing import Optional

from fastapi import APIRouter, Query

from app.schemas.requests import ModelInput
from app.schemas.verify import Suite, VerifyReport
from app.services.molecule_service import molecule_service
from app.services.verify_service import verify_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/verify", tags=["Verify"])


@router.get("/{suite}", response_model=VerifyReport)
def verify(
    suite: Suite,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    mu: Optional[float] = None,
    l: int = Query(0, ge=0),
    tolerance: Optional[float] = Query(None, gt=0),
):
    """
    Run one suite, or all of them. Canonical parameters (alpha=-2, beta=1, mu=1)
    are used when no model is given. Failed checks are reported, not raised.
    """
    p = None
    if any(v is not None for v in (alpha, beta, mu)):
        p = molecule_service.resolve_model(ModelInput(alpha=alpha, beta=beta, mu=mu))
    report = verify_service.run(suite.value, p, l=l, tolerance=tolerance)
    if not report.passed:
        logger.warning(f"Verification '{suite.value}': {len(report.failures)} check(s) failed")
    return report
