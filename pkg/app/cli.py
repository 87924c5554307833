"""
Command-line front end

Usage:
    python -m app.cli spectrum --alpha -2 --beta 1 --mu 1 --n-max 2
    python -m app.cli wavefunction --molecules data/molecules.csv --name CO --n 1
    python -m app.cli verify --suite all
"""
import argparse
import logging
import sys
from typing import List, Optional, TextIO

import numpy as np
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import KratzerError, UsageError
from app.core.logging_config import configure_logging
from app.schemas.cli import RunConfig
from app.schemas.kratzer import KratzerParams
from app.schemas.molecule import EnergyUnit, LengthUnit
from app.schemas.requests import ModelInput
from app.schemas.verify import Suite
from app.services.export_service import OutputFormat, export_service
from app.services.kratzer_service import kratzer_service
from app.services.molecule_service import HEADER, molecule_service
from app.services.spectrum_service import spectrum_service
from app.services.verify_service import verify_service
from app.services.wavefunction_service import wavefunction_service

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


# ---------- Parser ----------

def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("model parameters (one mode)")
    group.add_argument("--alpha", type=float, help="raw mode: alpha [hartree*bohr]")
    group.add_argument("--beta", type=float, help="raw mode: beta [hartree*bohr^2]")
    group.add_argument("--mu", type=float, help="raw mode: reduced mass [electron masses]")
    group.add_argument("--De", type=float, help="physical mode: well depth")
    group.add_argument("--De-unit", dest="De_unit", choices=[u.value for u in EnergyUnit], default="hartree")
    group.add_argument("--re", type=float, help="physical mode: equilibrium distance")
    group.add_argument("--re-unit", dest="re_unit", choices=[u.value for u in LengthUnit], default="bohr")
    group.add_argument("--mu-amu", dest="mu_amu", type=float, help="physical mode: reduced mass [amu]")
    group.add_argument("--molecules", help="table mode: molecule CSV (default: bundled table)")
    group.add_argument("--name", help="table mode: molecule name")


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str = "csv") -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=default_format)
    parser.add_argument("--output", help="write to this path instead of standard output")


def _add_sampling_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r-min", dest="r_min", type=float)
    parser.add_argument("--r-max", dest="r_max", type=float)
    parser.add_argument("--points", type=int)
    parser.add_argument("--spacing", choices=["log", "uniform"], default="log")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kratzer", description="so(2,1) toolkit for the Kratzer oscillator")
    parser.add_argument("--log-level", dest="log_level", default=settings.LOG_LEVEL)
    commands = parser.add_subparsers(dest="command", required=True)

    spectrum = commands.add_parser("spectrum", help="closed-form bound-state energies")
    _add_model_flags(spectrum)
    spectrum.add_argument("--n-max", dest="n_max", type=int, default=4)
    spectrum.add_argument("--l-max", dest="l_max", type=int, default=0)
    spectrum.add_argument("--workers", type=int, default=1)
    _add_output_flags(spectrum)

    wavefunction = commands.add_parser("wavefunction", help="normalized radial samples Q_n(r)")
    _add_model_flags(wavefunction)
    wavefunction.add_argument("--n", type=int, default=0)
    wavefunction.add_argument("--l", type=int, default=0)
    _add_sampling_flags(wavefunction)
    _add_output_flags(wavefunction)

    verify = commands.add_parser("verify", help="run the invariant suites")
    _add_model_flags(verify)
    verify.add_argument("--suite", choices=[s.value for s in Suite], default=Suite.ALL.value)
    verify.add_argument("--l", type=int, default=0)
    verify.add_argument("--tolerance", type=float, help="override every upper-bound tolerance")
    verify.add_argument("--output", help="write the report to this path")

    constants = commands.add_parser("constants", help="unit-conversion constants")
    _add_output_flags(constants, default_format="json")

    molecules = commands.add_parser("molecules", help="list a molecule table or inspect one entry")
    molecules.add_argument("--molecules", help="molecule CSV (default: bundled table)")
    molecules.add_argument("--name", help="inspect this molecule")
    _add_output_flags(molecules, default_format="json")

    potential = commands.add_parser("potential", help="sample U(r) and U_eff(r)")
    _add_model_flags(potential)
    potential.add_argument("--l", type=int, default=0)
    _add_sampling_flags(potential)
    _add_output_flags(potential)

    transitions = commands.add_parser("transitions", help="vibrational transitions allowed by the selection rules")
    _add_model_flags(transitions)
    transitions.add_argument("--l", type=int, default=0)
    transitions.add_argument("--n-max", dest="n_max", type=int, default=4)
    _add_output_flags(transitions)

    return parser


# ---------- Helpers ----------

def _model(args: argparse.Namespace, required: bool = True) -> Optional[KratzerParams]:
    inp = ModelInput(
        alpha=args.alpha, beta=args.beta, mu=args.mu,
        De=args.De, De_unit=args.De_unit, re=args.re, re_unit=args.re_unit, mu_amu=args.mu_amu,
        molecule=args.name, molecules_path=args.molecules,
    )
    given = [inp.alpha, inp.beta, inp.mu, inp.De, inp.re, inp.mu_amu, inp.molecule]
    if not required and all(v is None for v in given):
        return None
    if args.molecules and not args.name:
        raise UsageError("--molecules needs --name")
    return molecule_service.resolve_model(inp)


def _require_nonnegative(**values: int) -> None:
    for flag, value in values.items():
        if value < 0:
            raise UsageError(f"--{flag.replace('_', '-')} must be nonnegative, got {value}")


# ---------- Commands ----------

def cmd_spectrum(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    _require_nonnegative(n_max=args.n_max, l_max=args.l_max)
    p = _model(args)
    entries = spectrum_service.spectrum_table(p, args.n_max, args.l_max, workers=args.workers)
    export_service.write(export_service.render_spectrum(entries, config.format), config.output, stdout)
    return EXIT_OK


def cmd_wavefunction(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    _require_nonnegative(n=args.n, l=args.l)
    p = _model(args)
    state = wavefunction_service.state(p, args.n, args.l)
    grid = wavefunction_service.requested_grid(state, args.r_min, args.r_max, args.points, args.spacing)
    sampled = wavefunction_service.sample(state, grid)
    response = wavefunction_service.response(state, sampled)
    export_service.write(export_service.render_wavefunction(response, config.format), config.output, stdout)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    _require_nonnegative(l=args.l)
    p = _model(args, required=False)
    report = verify_service.run(args.suite, p, l=args.l, tolerance=config.tolerance)
    export_service.write(export_service.to_json(report), config.output, stdout)
    if not report.passed:
        for check in report.failures:
            logger.warning(f"FAILED {check.suite}/{check.name}: {check.residual:.3e} vs {check.tolerance:.3e}")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_constants(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    report = molecule_service.constants_report()
    if config.format == OutputFormat.CSV:
        rows = [{"name": k, "value": v} for k, v in report.model_dump().items()]
        text = export_service.to_csv(rows, ["name", "value"])
    else:
        text = export_service.to_json(report)
    export_service.write(text, config.output, stdout)
    return EXIT_OK


def cmd_molecules(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    records = molecule_service.load_molecule_table(args.molecules)
    if args.name:
        summary = molecule_service.summarize(molecule_service.find_molecule(records, args.name))
        if config.format == OutputFormat.CSV:
            row = {
                "name": summary.record.name,
                "De_hartree": summary.params.De,
                "re_bohr": summary.params.re,
                "mu_me": summary.params.mu,
                "alpha": summary.alpha,
                "beta": summary.beta,
                "ground_energy_hartree": summary.ground_energy_hartree,
                "first_gap_cm1": summary.first_gap_cm1,
                "harmonic_gap_cm1": summary.harmonic_gap_cm1,
            }
            text = export_service.to_csv([row], list(row))
        else:
            text = export_service.to_json(summary)
    else:
        rows = [
            {
                "name": r.name,
                "De": r.De_value,
                "De_unit": r.De_unit.value,
                "re": r.re_value,
                "re_unit": r.re_unit.value,
                "mass1_amu": r.mass1,
                "mass2_amu": r.mass2,
                "mu_amu": r.mu_amu,
            }
            for r in records
        ]
        text = export_service.render_records(rows, HEADER + ["mu_amu"], config.format)
    export_service.write(text, config.output, stdout)
    return EXIT_OK


def cmd_potential(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    _require_nonnegative(l=args.l)
    p = _model(args)
    count = args.points or 200
    low = args.r_min if args.r_min is not None else 0.25 * p.re if p.beta > 0 else 0.05
    high = args.r_max if args.r_max is not None else 10.0 * max(p.re, 1.0)
    if low <= 0 or high < low or count < 1:
        raise UsageError(f"invalid sampling range [{low:g}, {high:g}] with {count} point(s)")
    r = np.geomspace(low, high, count) if args.spacing == "log" else np.linspace(low, high, count)
    samples = kratzer_service.sample_potential(p, args.l, r)
    export_service.write(export_service.render_potential(samples, args.l, config.format), config.output, stdout)
    return EXIT_OK


def cmd_transitions(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    _require_nonnegative(l=args.l, n_max=args.n_max)
    p = _model(args)
    table = spectrum_service.transitions(p, args.l, args.n_max)
    export_service.write(export_service.render_transitions(table, config.format), config.output, stdout)
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "verify": cmd_verify,
    "constants": cmd_constants,
    "molecules": cmd_molecules,
    "potential": cmd_potential,
    "transitions": cmd_transitions,
}


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args.log_level, stderr)
    config = RunConfig(
        command=args.command,
        format=getattr(args, "format", "json"),
        output=getattr(args, "output", None),
        tolerance=getattr(args, "tolerance", None),
    )
    try:
        return COMMANDS[args.command](args, config, stdout)
    except UsageError as e:
        logger.debug("usage error", exc_info=True)
        print(f"{parser.prog} {args.command}: error: {e}", file=stderr)
        return EXIT_USAGE
    except KratzerError as e:
        logger.error(f"{type(e).__name__}: {e}", exc_info=settings.DEBUG)
        print(f"{parser.prog} {args.command}: error: {e}", file=stderr)
        return e.exit_code
    except ValidationError as e:
        logger.error(f"invalid input: {e}", exc_info=settings.DEBUG)
        print(f"{parser.prog} {args.command}: error: {e.errors()[0]['msg']}", file=stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
