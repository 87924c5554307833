"""
Spectrum API endpoints
Closed-form energy tables and allowed vibrational transitions
"""
import logging

from fastapi import APIRouter

from app.schemas.requests import SpectrumRequest, TransitionsRequest
from app.schemas.spectrum import SpectrumTable, TransitionTable
from app.services.molecule_service import molecule_service
from app.services.spectrum_service import spectrum_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/spectrum", tags=["Spectrum"])


@router.post(
    "",
    response_model=SpectrumTable,
    responses={
        400: {"description": "Invalid parameter mode"},
        422: {"description": "Parameters outside the bound-state domain"},
    },
)
def spectrum(request: SpectrumRequest):
    """
    Bound-state energies E(n, l) for 0 <= n <= n_max, 0 <= l <= l_max, ordered by (l, n).

    - **model**: raw (alpha, beta, mu), physical (De, re, mu_amu) or table (molecule)
    """
    p = molecule_service.resolve_model(request.model)
    logger.info(f"Spectrum request: alpha={p.alpha:g}, beta={p.beta:g}, mu={p.mu:g}, n_max={request.n_max}, l_max={request.l_max}")
    entries = spectrum_service.spectrum_table(p, request.n_max, request.l_max)
    return SpectrumTable(alpha=p.alpha, beta=p.beta, mu=p.mu, entries=entries)


@router.post("/transitions", response_model=TransitionTable)
def transitions(request: TransitionsRequest):
    """Absorption pairs n < n' <= n_max whose n' - n is allowed by the adjoint selection rules"""
    p = molecule_service.resolve_model(request.model)
    return spectrum_service.transitions(p, request.l, request.n_max)
