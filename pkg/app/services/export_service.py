"""
Export Service
CSV and JSON emission of tables, samples and reports
"""
import enum
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import pandas as pd
from pydantic import BaseModel

from app.schemas.kratzer import PotentialSample
from app.schemas.molecule import UNITS
from app.schemas.spectrum import SpectrumEntry, TransitionTable
from app.schemas.wavefunction import WaveFunctionResponse

logger = logging.getLogger(__name__)

SPECTRUM_COLUMNS = ["n", "l", "q0", "qn", "sigma_n", "energy_hartree", "energy_eV", "energy_cm1"]


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, BaseModel):
        return obj.model_dump(mode="json")
    if isinstance(obj, (list, tuple)):
        return [_jsonable(item) for item in obj]
    if isinstance(obj, dict):
        return {key: _jsonable(value) for key, value in obj.items()}
    return obj


class ExportService:
    """Deterministic CSV (pandas) and JSON rendering"""

    def to_csv(self, rows: Iterable[Dict[str, Any]], columns: Sequence[str], comments: Optional[Dict[str, Any]] = None) -> str:
        frame = pd.DataFrame(list(rows), columns=list(columns))
        body = frame.to_csv(index=False, lineterminator="\n", float_format="%.16g")
        if not comments:
            return body
        preamble = "".join(f"# {key}={value}\n" for key, value in comments.items())
        return preamble + body

    def to_json(self, obj: Any) -> str:
        return json.dumps(_jsonable(obj), indent=2, ensure_ascii=False) + "\n"

    # ---------- Table shapes ----------

    def spectrum_rows(self, entries: Sequence[SpectrumEntry]) -> List[Dict[str, Any]]:
        return [
            {
                "n": e.n,
                "l": e.l,
                "q0": e.q0,
                "qn": e.qn,
                "sigma_n": e.sigma_n,
                "energy_hartree": e.energy,
                "energy_eV": e.energy * UNITS.eV_per_hartree,
                "energy_cm1": e.energy * UNITS.invcm_per_hartree,
            }
            for e in entries
        ]

    def render_spectrum(self, entries: Sequence[SpectrumEntry], fmt: str) -> str:
        rows = self.spectrum_rows(entries)
        if fmt == OutputFormat.CSV:
            return self.to_csv(rows, SPECTRUM_COLUMNS)
        return self.to_json(rows)

    def render_wavefunction(self, response: WaveFunctionResponse, fmt: str) -> str:
        if fmt == OutputFormat.CSV:
            rows = [{"r": s.r, "Q": s.Q} for s in response.samples]
            return self.to_csv(rows, ["r", "Q"], comments=response.header.model_dump())
        return self.to_json(response)

    def render_potential(self, samples: Sequence[PotentialSample], l: int, fmt: str) -> str:
        if fmt == OutputFormat.CSV:
            return self.to_csv([s.model_dump() for s in samples], ["r", "U", "U_eff"], comments={"l": l})
        return self.to_json({"l": l, "samples": list(samples)})

    def render_transitions(self, table: TransitionTable, fmt: str) -> str:
        if fmt == OutputFormat.CSV:
            columns = ["l", "n_lower", "n_upper", "delta_n", "energy_hartree", "wavenumber_cm1"]
            return self.to_csv([t.model_dump() for t in table.transitions], columns)
        return self.to_json(table)

    def render_records(self, rows: Sequence[Dict[str, Any]], columns: Sequence[str], fmt: str) -> str:
        if fmt == OutputFormat.CSV:
            return self.to_csv(rows, columns)
        return self.to_json(list(rows))

    # ---------- Output ----------

    def write(self, text: str, output: Optional[str], stream: TextIO) -> None:
        """Write to the output path, or to stream when no path is given"""
        if output:
            Path(output).write_text(text, encoding="utf-8")
            logger.info(f"Wrote {len(text)} bytes to {output}")
        else:
            stream.write(text)


# Singleton instance
export_service = ExportService()
