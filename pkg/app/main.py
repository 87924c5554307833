"""
Kratzer Algebra Service - Main Application
FastAPI application exposing the so(2,1) spectrum, wavefunctions and invariant checks
"""
import logging

from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse

from app.api.v1.router import api_router
from app.core.config import settings
from app.core.exceptions import (
    DomainError,
    KratzerError,
    NumericError,
    ParseError,
    RangeError,
    UnitError,
    UsageError,
)
from app.core.logging_config import configure_logging

configure_logging("DEBUG" if settings.DEBUG else settings.LOG_LEVEL)

logger = logging.getLogger(__name__)

# Create FastAPI application
app = FastAPI(
    title="Kratzer Algebra API",
    description="Algebraic bound states of the Kratzer oscillator: spectrum, wavefunctions and verification",
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
)

# Domain errors to HTTP status codes
STATUS_BY_ERROR = [
    (UsageError, status.HTTP_400_BAD_REQUEST),
    (ParseError, status.HTTP_400_BAD_REQUEST),
    (UnitError, status.HTTP_400_BAD_REQUEST),
    (DomainError, status.HTTP_422_UNPROCESSABLE_ENTITY),
    (RangeError, status.HTTP_500_INTERNAL_SERVER_ERROR),
    (NumericError, status.HTTP_500_INTERNAL_SERVER_ERROR),
]


@app.exception_handler(KratzerError)
async def kratzer_error_handler(request: Request, exc: KratzerError):
    code = status.HTTP_500_INTERNAL_SERVER_ERROR
    for error_type, mapped in STATUS_BY_ERROR:
        if isinstance(exc, error_type):
            code = mapped
            break
    if code >= 500:
        logger.error(f"{type(exc).__name__} on {request.url.path}: {exc}", exc_info=True)
    else:
        logger.info(f"{type(exc).__name__} on {request.url.path}: {exc}")
    return JSONResponse(status_code=code, content={"detail": str(exc), "error": type(exc).__name__})


# Include API routes
app.include_router(api_router)


@app.get("/")
async def root():
    """Root endpoint - API health check"""
    return {
        "message": "Kratzer Algebra API is running",
        "version": "1.0.0",
        "docs": "/docs",
    }


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "service": "kratzer-algebra",
    }
