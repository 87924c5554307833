"""
CLI Schemas
Per-invocation options shared by every subcommand
"""
from typing import Optional

from pydantic import BaseModel, Field

from app.services.export_service import OutputFormat


class RunConfig(BaseModel):
    command: str
    format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = Field(None, description="Output path; standard output when unset")
    tolerance: Optional[float] = Field(None, description="Override for every upper-bound verify tolerance")
