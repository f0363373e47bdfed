#!/usr/bin/env python3
"""
mtc-forge command line.

    mtc-forge generate (su2 --level K | minimal --m M | trivial | fibonacci) [--out PATH]
    mtc-forge verify PATH [--suite NAME]... [--tol EPS] [--precision double|extended]
                          [--jobs N] [--format json|text] [--out PATH]

Exit codes: 0 pass (or generation succeeded), 1 verification failure, 2 usage or IO error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from .algebra_core import Tolerance
from .catalog_io import save_catalog
from .config import DEFAULT_ABS_EPS, Precision, resolve_jobs
from .errors import CatalogParseError, CatalogValidationError, DomainError, MtcForgeError, UsageError
from .forge_api import MtcForge
from .report import emit_report
from .verifier import SUITES, expand_suites

logger = logging.getLogger("mtc_forge")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class CliConfig:
    """Validated command-line settings."""
    subcommand: str
    tolerance: Tolerance = field(default_factory=Tolerance)
    precision: Optional[Precision] = None
    jobs: int = 0
    out: Optional[Path] = None
    format: str = "json"
    suites: List[str] = field(default_factory=lambda: list(SUITES))
    source: Optional[str] = None
    family: Optional[str] = None
    level: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        if not self.tolerance.abs_eps > 0:
            raise UsageError(f"--tol must be > 0, got {self.tolerance.abs_eps}")
        if self.jobs < 0:
            raise UsageError(f"--jobs must be >= 0, got {self.jobs}")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mtc-forge", description="Generate and verify modular tensor category data.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    gen = sub.add_parser("generate", help="write a family catalog")
    families = gen.add_subparsers(dest="family", parser_class=_Parser)
    families.required = True
    su2 = families.add_parser("su2", help="SU(2)_k")
    su2.add_argument("--level", type=int, required=True)
    minimal = families.add_parser("minimal", help="Virasoro minimal model M(m, m+1)")
    minimal.add_argument("--m", type=int, required=True)
    families.add_parser("trivial", help="the trivial category")
    families.add_parser("fibonacci", help="the Fibonacci category")
    for p in families.choices.values():
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--precision", choices=[p.value for p in Precision], default=Precision.DOUBLE.value)

    ver = sub.add_parser("verify", help="verify a catalog file or bundled fixture")
    ver.add_argument("source", help="catalog path or fixture name")
    ver.add_argument("--suite", action="append", default=None, choices=list(SUITES) + ["all"])
    ver.add_argument("--tol", type=float, default=DEFAULT_ABS_EPS)
    ver.add_argument("--precision", choices=[p.value for p in Precision], default=None)
    ver.add_argument("--jobs", type=int, default=None)
    ver.add_argument("--format", choices=["json", "text"], default="json")
    ver.add_argument("--out", type=Path, default=None)
    return parser


def parse_config(argv: Sequence[str]) -> CliConfig:
    args = build_parser().parse_args(list(argv))
    _configure_logging(args.verbose)
    if args.subcommand == "generate":
        return CliConfig(
            subcommand="generate",
            family=args.family,
            level=getattr(args, "level", None),
            m=getattr(args, "m", None),
            precision=Precision(args.precision),
            out=args.out,
        )
    if not args.tol > 0:
        raise UsageError(f"--tol must be > 0, got {args.tol}")
    jobs = resolve_jobs(args.jobs)
    return CliConfig(
        subcommand="verify",
        source=args.source,
        tolerance=Tolerance(args.tol, args.tol),
        precision=Precision(args.precision) if args.precision else None,
        jobs=jobs,
        out=args.out,
        format=args.format,
        suites=expand_suites(args.suite),
    )


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _write(payload: bytes, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(payload.decode("utf-8"))
        sys.stdout.flush()
    else:
        out.write_bytes(payload)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Exit code
    """
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return EXIT_USAGE
    except MtcForgeError as exc:
        print(f"mtc-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        if config.subcommand == "generate":
            return _generate(config)
        return _verify(config)
    except (UsageError, CatalogParseError, CatalogValidationError, OSError) as exc:
        print(f"mtc-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MtcForgeError as exc:
        print(f"mtc-forge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _generate(config: CliConfig) -> int:
    forge = MtcForge()
    params = {}
    if config.family == "su2":
        params["level"] = config.level
    elif config.family == "minimal":
        params["m"] = config.m
    try:
        catalog = forge.generate(config.family, precision=config.precision, **params)
    except MtcForgeError as exc:
        if isinstance(exc, DomainError):
            raise UsageError(str(exc))
        raise
    _write(save_catalog(catalog), config.out)
    return EXIT_OK


def _verify(config: CliConfig) -> int:
    forge = MtcForge(tol=config.tolerance)
    catalog = forge.load(config.source)
    report = forge.verify(catalog, config.suites, config.precision, config.jobs)
    _write(emit_report(report, config.format), config.out)
    return EXIT_OK if report.overall else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
