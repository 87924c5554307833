"""
Wavefunction API endpoints
"""
import logging

from fastapi import APIRouter

from app.schemas.requests import WaveFunctionRequest
from app.schemas.wavefunction import WaveFunctionResponse
from app.services.molecule_service import molecule_service
from app.services.wavefunction_service import wavefunction_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/wavefunction", tags=["Wavefunction"])


@router.post("", response_model=WaveFunctionResponse)
def wavefunction(request: WaveFunctionRequest):
    """
    Normalized radial samples Q_n(r) with the state header.

    Unset r_min, r_max or points fall back to the default log grid of the state.
    """
    p = molecule_service.resolve_model(request.model)
    state = wavefunction_service.state(p, request.n, request.l)
    grid = wavefunction_service.requested_grid(state, request.r_min, request.r_max, request.points, request.spacing)
    logger.info(f"Sampling Q(n={request.n}, l={request.l}) on {grid.size} points")
    return wavefunction_service.response(state, wavefunction_service.sample(state, grid))
