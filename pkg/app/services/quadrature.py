"""
Adaptive quadrature helper
Wraps scipy.integrate.quad and turns non-convergence into NumericError
"""
import logging
import math
from typing import Callable, Optional

from scipy.integrate import quad

from app.core.config import settings
from app.core.exceptions import NumericError

logger = logging.getLogger(__name__)


def integrate(
    fn: Callable[[float], float],
    a: float,
    b: float,
    epsabs: Optional[float] = None,
    epsrel: float = 1e-12,
    points: Optional[list] = None,
) -> float:
    """
    Integrate fn over [a, b] (b may be +inf; b < a gives the signed integral).

    Raises:
        NumericError: QUADPACK reported non-convergence or a non-finite result
    """
    if a == b:
        return 0.0
    epsabs = settings.QUAD_EPSABS if epsabs is None else epsabs
    kwargs = dict(epsabs=epsabs, epsrel=epsrel, limit=settings.QUAD_LIMIT, full_output=1)
    if points and math.isfinite(b):
        kwargs["points"] = points
    result = quad(fn, a, b, **kwargs)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        logger.debug(f"quad on [{a}, {b}] reported: {result[3]}")
        raise NumericError(f"quadrature on [{a:g}, {b:g}] did not converge", achieved=abserr)
    if not math.isfinite(value):
        raise NumericError(f"quadrature on [{a:g}, {b:g}] returned a non-finite value")
    return float(value)
