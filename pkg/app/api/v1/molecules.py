"""
Molecule and constants API endpoints
"""
import logging
from typing import List

from fastapi import APIRouter, HTTPException, status

from app.core.exceptions import DomainError
from app.schemas.molecule import ConstantsReport, MoleculeRecord, MoleculeSummary
from app.services.molecule_service import molecule_service

logger = logging.getLogger(__name__)

router = APIRouter(tags=["Molecules"])


@router.get("/constants", response_model=ConstantsReport)
def constants():
    """Fixed unit-conversion constants"""
    return molecule_service.constants_report()


@router.get("/molecules", response_model=List[MoleculeRecord])
def list_molecules():
    """Bundled molecule table"""
    return molecule_service.load_molecule_table()


@router.get(
    "/molecules/{name}",
    response_model=MoleculeSummary,
    responses={404: {"description": "Molecule not in the table"}},
)
def get_molecule(name: str):
    """One molecule with its atomic-unit parameters, alpha, beta and first vibrational gap"""
    records = molecule_service.load_molecule_table()
    try:
        record = molecule_service.find_molecule(records, name)
    except DomainError as e:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    return molecule_service.summarize(record)
