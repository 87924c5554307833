"""
Molecule Service
Ingests molecule tables, converts to atomic units and derives Kratzer parameters
"""
import io
import logging
import math
import re
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import DomainError, NumericError, ParseError, UnitError, UsageError
from app.schemas.kratzer import KratzerParams
from app.schemas.requests import ModelInput
from app.schemas.molecule import (
    UNITS,
    ConstantsReport,
    EnergyUnit,
    LengthUnit,
    MolecularParams,
    MoleculeRecord,
    MoleculeSummary,
)

logger = logging.getLogger(__name__)

HEADER = ["name", "De", "De_unit", "re", "re_unit", "mass1_amu", "mass2_amu"]
OPTIONAL_COLUMNS = ["mu_amu"]

ENERGY_TAGS = tuple(u.value for u in EnergyUnit)
LENGTH_TAGS = tuple(u.value for u in LengthUnit)

_ENERGY_TO_HARTREE = {
    EnergyUnit.HARTREE: 1.0,
    EnergyUnit.EV: UNITS.hartree_per_eV,
    EnergyUnit.INVCM: UNITS.hartree_per_invcm,
}
_LENGTH_TO_BOHR = {
    LengthUnit.BOHR: 1.0,
    LengthUnit.ANGSTROM: UNITS.bohr_per_angstrom,
}


def convert_energy(value: float, from_unit: str, to_unit: str) -> float:
    """Convert an energy between table unit tags"""
    return value * _ENERGY_TO_HARTREE[EnergyUnit(from_unit)] / _ENERGY_TO_HARTREE[EnergyUnit(to_unit)]


def convert_length(value: float, from_unit: str, to_unit: str) -> float:
    """Convert a length between table unit tags"""
    return value * _LENGTH_TO_BOHR[LengthUnit(from_unit)] / _LENGTH_TO_BOHR[LengthUnit(to_unit)]


def kratzer_params(alpha: float, beta: float, mu: float, hbar: Optional[float] = None) -> KratzerParams:
    """
    Build KratzerParams directly (the only route to beta = 0).

    Raises:
        DomainError: alpha >= 0, beta < 0, mu <= 0 or non-finite input
    """
    try:
        return KratzerParams(alpha=alpha, beta=beta, mu=mu, hbar=settings.HBAR if hbar is None else hbar)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise DomainError(f"invalid model parameters ({problems}); bound states need alpha < 0") from e


class MoleculeService:
    """Molecule table ingestion and unit handling"""

    # ---------- Ingestion ----------

    def parse_molecule_table(self, text: str) -> List[MoleculeRecord]:
        """
        Parse a CSV molecule table.

        Header: name,De,De_unit,re,re_unit,mass1_amu,mass2_amu[,mu_amu]

        Returns:
            one record per data row, in file order

        Raises:
            ParseError: malformed header or row (with its line number)
            UnitError: unit tag outside the allowed set
            DomainError: nonpositive or non-finite value
        """
        if not text.strip():
            raise ParseError("empty table: header row missing", line=1)

        header = self._trim(self._read_rows(text, nrows=1)[0])
        if header not in (HEADER, HEADER + OPTIONAL_COLUMNS):
            raise ParseError(f"header must be '{','.join(HEADER)}' (optionally ',mu_amu'), got '{','.join(header)}'", line=1)
        ncols = len(header)
        rows = self._read_rows(text)

        records: List[MoleculeRecord] = []
        for index, row in enumerate(rows[1:], start=2):
            if not any(row):
                continue
            fields = self._trim(row)
            if len(fields) > ncols:
                raise ParseError(f"expected {ncols} fields, found {len(fields)}", line=index)
            fields += [""] * (ncols - len(fields))
            records.append(self._record_from_fields(dict(zip(header, fields)), index))

        logger.info(f"Parsed {len(records)} molecule record(s)")
        return records

    @staticmethod
    def _read_rows(text: str, nrows: Optional[int] = None) -> List[List[str]]:
        """Raw stripped cells per line; the first line fixes the width"""
        try:
            frame = pd.read_csv(
                io.StringIO(text),
                header=None,
                nrows=nrows,
                dtype=str,
                keep_default_na=False,
                skip_blank_lines=False,
                index_col=False,
                on_bad_lines="error",
                engine="python",
            )
        except pd.errors.ParserError as e:
            match = re.search(r"Expected (\d+) fields in line (\d+), saw (\d+)", str(e))
            if match is None:
                raise ParseError(f"malformed table: {e}") from e
            expected, line, found = (int(g) for g in match.groups())
            raise ParseError(f"expected {expected} fields, found {found}", line=line) from e
        return [
            ["" if pd.isna(v) else str(v).strip() for v in row]
            for row in frame.itertuples(index=False, name=None)
        ]

    @staticmethod
    def _trim(row: List[str]) -> List[str]:
        fields = list(row)
        while fields and fields[-1] == "":
            fields.pop()
        return fields

    def _record_from_fields(self, fields: dict, line: int) -> MoleculeRecord:
        for column in HEADER:
            if fields.get(column, "") == "":
                raise ParseError(f"missing value for '{column}'", line=line)

        if fields["De_unit"] not in ENERGY_TAGS:
            raise UnitError(fields["De_unit"], ENERGY_TAGS, line=line)
        if fields["re_unit"] not in LENGTH_TAGS:
            raise UnitError(fields["re_unit"], LENGTH_TAGS, line=line)

        numbers = {}
        for column in ("De", "re", "mass1_amu", "mass2_amu", "mu_amu"):
            raw = fields.get(column, "")
            if raw == "":
                continue
            try:
                value = float(raw)
            except ValueError:
                raise ParseError(f"'{column}' is not a number: '{raw}'", line=line)
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"line {line}: '{column}' must be a positive finite number, got {raw}")
            numbers[column] = value

        return MoleculeRecord(
            name=fields["name"],
            De_value=numbers["De"],
            De_unit=fields["De_unit"],
            re_value=numbers["re"],
            re_unit=fields["re_unit"],
            mass1=numbers["mass1_amu"],
            mass2=numbers["mass2_amu"],
            mu_amu=numbers.get("mu_amu"),
        )

    def load_molecule_table(self, path: Optional[str] = None) -> List[MoleculeRecord]:
        """Read and parse a molecule table file (default: the bundled table)"""
        path = Path(path or settings.MOLECULE_TABLE)
        logger.info(f"Loading molecule table: {path}")
        return self.parse_molecule_table(path.read_text(encoding="utf-8"))

    def find_molecule(self, records: List[MoleculeRecord], name: str) -> MoleculeRecord:
        for record in records:
            if record.name == name:
                return record
        known = ", ".join(r.name for r in records) or "none"
        raise DomainError(f"molecule '{name}' not in table (known: {known})")

    # ---------- Conversion ----------

    def to_atomic_units(self, rec: MoleculeRecord) -> MolecularParams:
        """
        Convert a record to Hartree atomic units.

        mu = m1 m2 / (m1 + m2) in amu (or the mu_amu override), times electron masses per amu.
        """
        De = rec.De_value * _ENERGY_TO_HARTREE[rec.De_unit]
        re_ = rec.re_value * _LENGTH_TO_BOHR[rec.re_unit]
        mu_amu = rec.mu_amu if rec.mu_amu is not None else rec.mass1 * rec.mass2 / (rec.mass1 + rec.mass2)
        mu = mu_amu * UNITS.electronmass_per_amu
        if not all(math.isfinite(v) and v > 0 for v in (De, re_, mu)):
            raise NumericError(f"conversion of '{rec.name}' produced a non-finite or zero value")
        return MolecularParams(De=De, re=re_, mu=mu)

    def derive_kratzer(self, p: MolecularParams) -> KratzerParams:
        """alpha = -2 De re, beta = De re^2"""
        return kratzer_params(alpha=-2.0 * p.De * p.re, beta=p.De * p.re ** 2, mu=p.mu)

    # ---------- Model input ----------

    def resolve_model(self, inp: ModelInput) -> KratzerParams:
        """
        Turn one of the three entry modes into KratzerParams.

        Raises:
            UsageError: no mode, several modes, or a mode with a missing value
        """
        raw = {"alpha": inp.alpha, "beta": inp.beta, "mu": inp.mu}
        physical = {"De": inp.De, "re": inp.re, "mu_amu": inp.mu_amu}
        modes = []
        if any(v is not None for v in raw.values()):
            modes.append("raw")
        if any(v is not None for v in physical.values()):
            modes.append("physical")
        if inp.molecule is not None:
            modes.append("table")
        if len(modes) != 1:
            found = ", ".join(modes) if modes else "none"
            raise UsageError(
                "give exactly one parameter mode: raw (--alpha --beta --mu), physical "
                f"(--De --re --mu-amu) or table (--molecules --name); found: {found}"
            )

        mode = modes[0]
        if mode == "raw":
            self._require(raw, {"alpha": "--alpha", "beta": "--beta", "mu": "--mu"})
            return kratzer_params(inp.alpha, inp.beta, inp.mu)
        if mode == "physical":
            self._require(physical, {"De": "--De", "re": "--re", "mu_amu": "--mu-amu"})
            try:
                record = MoleculeRecord(
                    name="input",
                    De_value=inp.De,
                    De_unit=inp.De_unit,
                    re_value=inp.re,
                    re_unit=inp.re_unit,
                    mass1=2.0 * inp.mu_amu,
                    mass2=2.0 * inp.mu_amu,
                    mu_amu=inp.mu_amu,
                )
            except ValidationError as e:
                raise DomainError(f"invalid physical parameters: {e.errors()[0]['msg']}") from e
            return self.derive_kratzer(self.to_atomic_units(record))
        record = self.find_molecule(self.load_molecule_table(inp.molecules_path), inp.molecule)
        return self.derive_kratzer(self.to_atomic_units(record))

    @staticmethod
    def _require(values: dict, flags: dict) -> None:
        missing = [f"{name} ({flags[name]})" for name, value in values.items() if value is None]
        if missing:
            raise UsageError(f"missing {', '.join(missing)}")

    def constants_report(self) -> ConstantsReport:
        return ConstantsReport(
            hbar=settings.HBAR,
            hartree_per_eV=UNITS.hartree_per_eV,
            eV_per_hartree=UNITS.eV_per_hartree,
            hartree_per_invcm=UNITS.hartree_per_invcm,
            invcm_per_hartree=UNITS.invcm_per_hartree,
            bohr_per_angstrom=UNITS.bohr_per_angstrom,
            electronmass_per_amu=UNITS.electronmass_per_amu,
        )

    def summarize(self, rec: MoleculeRecord) -> MoleculeSummary:
        """Record with its atomic-unit parameters, ground energy and first vibrational gap"""
        from app.services.spectrum_service import spectrum_service

        params = self.to_atomic_units(rec)
        kp = self.derive_kratzer(params)
        e0 = spectrum_service.energy(kp, 0, 0)
        e1 = spectrum_service.energy(kp, 1, 0)
        omega = kp.hbar * math.sqrt(2.0 * params.De / (params.mu * params.re ** 2))
        return MoleculeSummary(
            record=rec,
            params=params,
            alpha=kp.alpha,
            beta=kp.beta,
            ground_energy_hartree=e0,
            first_gap_cm1=(e1 - e0) * UNITS.invcm_per_hartree,
            harmonic_gap_cm1=omega * UNITS.invcm_per_hartree,
        )


# Singleton instance
molecule_service = MoleculeService()
