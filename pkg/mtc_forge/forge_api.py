"""
Simple API for mtc-forge.
Use this to generate catalogs and verify them from other Python code.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

from .algebra_core import Tolerance
from .catalog_io import Catalog, FixtureLibrary, load_catalog, save_catalog
from .config import Precision
from .errors import DomainError
from .families import fibonacci_data, minimal_model, su2_data, trivial_data
from .report import VerificationReport
from .verifier import verify_catalog

logger = logging.getLogger(__name__)

FAMILIES = ("su2", "minimal", "trivial", "fibonacci")


class MtcForge:
    """
    High-level API: family generators, catalog files and verification.
    """

    def __init__(self, fixtures_dir: Optional[Path] = None, tol: Tolerance = Tolerance()):
        self.fixtures = FixtureLibrary(fixtures_dir)
        self.tol = tol

    def generate(self, family: str, precision: Precision = Precision.DOUBLE, **params) -> Catalog:
        """
        Generate a catalog for one of the shipped families.

        Args:
            family: 'su2' (level=K), 'minimal' (m=M), 'trivial' or 'fibonacci'
            precision: Precision recorded in the catalog and used by the generator
            **params: Family parameters

        Returns:
            Catalog
        """
        if family == "su2":
            level = params["level"]
            data, md = su2_data(level, precision, self.tol)
            name, generator_params = f"su2_k{level}", {"level": level}
        elif family == "minimal":
            m = params["m"]
            md, _ = minimal_model(m, self.tol)
            data = None
            name, generator_params = f"minimal_m{m}", {"m": m}
        elif family == "trivial":
            data, md = trivial_data()
            name, generator_params = "trivial", {}
        elif family == "fibonacci":
            data, md = fibonacci_data(self.tol)
            name, generator_params = "fibonacci", {}
        else:
            raise DomainError(f"unknown family {family!r} (choose from {', '.join(FAMILIES)})")

        logger.info("generated %s", name)
        return Catalog(
            name=name,
            ring=md.ring,
            generator={"family": family, "params": generator_params},
            modular_data=md,
            skeletal_data=data,
            precision=precision,
        )

    def load(self, source: Union[str, Path]) -> Catalog:
        """
        Load a catalog from a path, or a bundled fixture by name.

        Args:
            source: File path or fixture name (e.g. 'ising')
        """
        path = Path(source)
        if path.is_file():
            return load_catalog(path.read_bytes())
        if self.fixtures.has_fixture(str(source)):
            return self.fixtures.load(str(source))
        raise FileNotFoundError(f"no catalog file or fixture named {str(source)!r}")

    def save(self, catalog: Catalog, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_bytes(save_catalog(catalog))
        logger.info("wrote %s", path)
        return path

    def verify(self, catalog: Catalog, suites: Optional[Iterable[str]] = None,
               precision: Optional[Precision] = None, jobs: Optional[int] = None) -> VerificationReport:
        return verify_catalog(catalog, suites, self.tol, precision, jobs)

    def list_fixtures(self) -> List[str]:
        return self.fixtures.list_fixtures()


# Convenience functions for quick access
api = MtcForge()


def generate(family: str, **params) -> Catalog:
    """Quick function to generate a family catalog."""
    return api.generate(family, **params)


def verify(source: Union[str, Path, Catalog], suites: Optional[Iterable[str]] = None) -> VerificationReport:
    """Quick function to verify a catalog, a catalog file or a fixture."""
    catalog = source if isinstance(source, Catalog) else api.load(source)
    return api.verify(catalog, suites)


def list_fixtures() -> List[str]:
    """List bundled fixtures."""
    return api.list_fixtures()


def summary(report: VerificationReport) -> Dict[str, str]:
    """Section name -> status."""
    return {s.name: s.status.value for s in report.sections}
