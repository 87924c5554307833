"""
API v1 Router
Aggregates all v1 API routes
"""
from fastapi import APIRouter

from app.api.v1.molecules import router as molecules_router
from app.api.v1.spectrum import router as spectrum_router
from app.api.v1.verify import router as verify_router
from app.api.v1.wavefunction import router as wavefunction_router

# Main v1 router
api_router = APIRouter(prefix="/api/v1")

# Include sub-routers
api_router.include_router(spectrum_router)
api_router.include_router(wavefunction_router)
api_router.include_router(verify_router)
api_router.include_router(molecules_router)
