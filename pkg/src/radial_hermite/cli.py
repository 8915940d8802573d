"""
Command-line front end: polynomial tables, Gram matrices, norms, spectra, ray samples, verification and errata.

Every subcommand writes CSV or JSON to standard output (or --output); logs and diagnostics go to stderr.
"""

import logging
import sys
from typing import Callable, Literal, Optional, Sequence

from tap import Tap

from radial_hermite.inner_product import export_gram_csv, export_gram_json, export_norms_csv, export_norms_json
from radial_hermite.inner_product import gram_matrix, norm_table
from radial_hermite.oscillator import export_samples_csv, export_samples_json, export_spectrum_csv
from radial_hermite.oscillator import export_spectrum_json, sample_rays, spectrum_table
from radial_hermite.params import ModelParams
from radial_hermite.polynomials import export_poly_csv, export_poly_json, radial_hermite
from radial_hermite.utils import PathLike, ParameterError, RadialHermiteError, write_output
from radial_hermite.verification import (
    DEFAULT_N_MAX,
    GridResult,
    errata,
    export_checks_csv,
    export_checks_json,
    export_errata_csv,
    export_errata_json,
    run_checks,
    run_grid,
)

logger = logging.getLogger(__name__)

OutputFormat = Literal["csv", "json"]


class OutputArgs(Tap):
    format: OutputFormat = "csv"  # Output format
    output: Optional[str] = None  # Path of the output file (standard output if not given)


class ModelArgs(OutputArgs):
    r: int  # Number of radial lines (odd, >= 1)
    nu: str  # Weight parameter nu > -1/2 as "p/q" or "p" (use --nu=-1/3 for negative values)


class PolyArgs(ModelArgs):
    """Coefficients of the radial Hermite polynomial H_N."""

    N: int  # Degree


class GramArgs(ModelArgs):
    """Gram matrix <H_N, H_M> for 0 <= N, M <= nmax; fails if an off-diagonal entry is not exactly zero."""

    nmax: int  # Largest degree


class NormsArgs(ModelArgs):
    """Closed-form norms zeta_N next to the Gram diagonal."""

    nmax: int  # Largest degree


class SpectrumArgs(ModelArgs):
    """Eigenvalues of the bosonic and supersymmetric Hamiltonians on h_N."""

    nmax: int  # Largest degree


class EvalArgs(ModelArgs):
    """Samples of the Hermite function h_N on every radial line."""

    N: int  # Degree
    grid: tuple[float, float, int] = (-2.0, 2.0, 201)  # t_min t_max count of the sample points on each line


class VerifyArgs(OutputArgs):
    """Runs the invariant checks at (r, nu), or over the full parameter grid when neither is given."""

    r: Optional[int] = None  # Number of radial lines (odd, >= 1)
    nu: Optional[str] = None  # Weight parameter nu > -1/2 as "p/q" or "p"
    nmax: int = DEFAULT_N_MAX  # Largest degree used by the checks
    seed: int = 0  # Seed of the random test inputs


class ErrataArgs(OutputArgs):
    """Recomputes the documented corrections of printed formulas with their evidence."""


class RadialHermiteArgs(Tap):
    """Radial Hermite polynomials, Dunkl-type ladder operators and supersymmetric spectra."""

    threads: Optional[int] = None  # Worker threads for Gram and spectrum fills (default: $RADIAL_HERMITE_THREADS or 1)
    verbose: bool = False  # Log debug messages to stderr

    def configure(self) -> None:
        self.add_subparsers(dest="command", required=True, help="sub-command help")
        self.add_subparser("poly", PolyArgs, help="radial Hermite polynomial coefficients")
        self.add_subparser("gram", GramArgs, help="Gram matrix of H_0..H_nmax")
        self.add_subparser("norms", NormsArgs, help="closed-form norms against the Gram diagonal")
        self.add_subparser("spectrum", SpectrumArgs, help="bosonic and supersymmetric spectra")
        self.add_subparser("eval", EvalArgs, help="h_N sampled on the radial lines")
        self.add_subparser("verify", VerifyArgs, help="invariant checks")
        self.add_subparser("errata", ErrataArgs, help="corrections of printed formulas")

    def process_args(self) -> None:
        if self.threads is not None and self.threads < 1:
            raise ParameterError(f"--threads must be positive, got {self.threads}.")

        if self.command == "errata":
            self.params = None
        elif self.command == "verify" and self.r is None and self.nu is None:
            self.params = None
        elif self.command == "verify" and (self.r is None or self.nu is None):
            raise ParameterError("verify needs both --r and --nu, or neither for the full grid.")
        else:
            self.params = ModelParams(r=self.r, nu=self.nu)

        if getattr(self, "N", 0) < 0:
            raise ParameterError(f"--N must be nonnegative, got {self.N}.")

        if getattr(self, "nmax", 0) < 0:
            raise ParameterError(f"--nmax must be nonnegative, got {self.nmax}.")

        if self.command == "eval":
            t_min, t_max, count = self.grid

            if count < 1 or t_min > t_max:
                raise ParameterError(f"--grid needs t_min <= t_max and a positive count, got {self.grid}.")


def _emit(args: RadialHermiteArgs, csv_text: Callable[[], str], json_text: Callable[[], str]) -> None:
    write_output(json_text() if args.format == "json" else csv_text(), args.output)


def run_poly(args: RadialHermiteArgs) -> int:
    p = radial_hermite(args.params, args.N)
    _emit(args, lambda: export_poly_csv(p), lambda: export_poly_json(args.params, args.N, p))

    return 0


def run_gram(args: RadialHermiteArgs) -> int:
    gram = gram_matrix(args.params, args.nmax, threads=args.threads)
    _emit(args, lambda: export_gram_csv(gram), lambda: export_gram_json(gram))
    nonzero = gram.off_diagonal_nonzero()

    if nonzero:
        print(f"error: {len(nonzero)} off-diagonal Gram entries are not zero, first at {nonzero[0]}", file=sys.stderr)
        return 1

    return 0


def run_norms(args: RadialHermiteArgs) -> int:
    rows = norm_table(args.params, args.nmax)
    _emit(args, lambda: export_norms_csv(rows), lambda: export_norms_json(args.params, rows))

    return 0


def run_spectrum(args: RadialHermiteArgs) -> int:
    rows = spectrum_table(args.params, args.nmax, threads=args.threads)
    _emit(args, lambda: export_spectrum_csv(rows), lambda: export_spectrum_json(args.params, rows))

    return 0


def run_eval(args: RadialHermiteArgs) -> int:
    t_min, t_max, count = args.grid
    rows = sample_rays(args.params, args.N, t_min=t_min, t_max=t_max, count=count)
    _emit(args, lambda: export_samples_csv(rows), lambda: export_samples_json(args.params, args.N, rows))

    return 0


def run_verify(args: RadialHermiteArgs) -> int:
    if args.params is None:
        grid = run_grid(args.nmax, seed=args.seed, threads=args.threads)
    else:
        grid = [GridResult(args.params, run_checks(args.params, args.nmax, seed=args.seed, threads=args.threads))]

    _emit(args, lambda: export_checks_csv(grid), lambda: export_checks_json(grid))
    failed = [f"{point.params}: {result.name}" for point in grid for result in point.results if not result.passed]

    if failed:
        print(f"error: {len(failed)} check(s) failed, first {failed[0]}", file=sys.stderr)
        return 1

    return 0


def run_errata(args: RadialHermiteArgs) -> int:
    items = errata()
    _emit(args, lambda: export_errata_csv(items), lambda: export_errata_json(items))

    return 0


COMMANDS: dict[str, Callable[[RadialHermiteArgs], int]] = {
    "poly": run_poly,
    "gram": run_gram,
    "norms": run_norms,
    "spectrum": run_spectrum,
    "eval": run_eval,
    "verify": run_verify,
    "errata": run_errata,
}


def dispatch(argv: Optional[Sequence[str]] = None, config_files: Optional[list[PathLike]] = None) -> int:
    """Parses argv, runs the subcommand and returns the exit status.

    Usage errors raise SystemExit(2) from argparse; parameter and domain errors return 1.

    :param argv: Command-line arguments without the program name (default: sys.argv[1:]).
    :param config_files: Files of command-line flags parsed before argv (e.g. "--threads 4"); argv wins.
    :return: The exit status.
    """
    try:
        args = RadialHermiteArgs(config_files=config_files).parse_args(argv)
    except RadialHermiteError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug("Running %s", args.command)

    try:
        return COMMANDS[args.command](args)
    except RadialHermiteError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
