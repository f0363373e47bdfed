"""
Verification runner.

Runs the requested suites over one catalog, in a fixed order, and collects
the sections into a VerificationReport.
"""

import logging
import time
from typing import Callable, Dict, Iterable, List, Optional

from .algebra_core import Tolerance
from .braid_matrices import verify_braid_relations
from .catalog_io import Catalog, catalog_hash
from .category_data import verify_f_unitarity, verify_hexagon, verify_pentagon
from .config import Precision, resolve_jobs
from .errors import MtcForgeError, UsageError
from .fusion_ring import verify_ring
from .modular_data import verify_modular
from .report import Entry, Section, SuiteStatus, VerificationReport
from .transport import (
    full_field_section,
    reflection_positivity_check,
    rigidity_section,
    verify_transport,
    verify_twist_compat,
)

logger = logging.getLogger(__name__)

SUITES = ("ring", "modular", "pentagon", "hexagon", "fusion", "braid", "transport",
          "rigidity", "twist", "reflection", "fullfield")

NEEDS_SKELETAL = {"pentagon", "hexagon", "fusion", "braid", "transport", "rigidity", "twist",
                  "reflection", "fullfield"}
NEEDS_MODULAR = {"modular", "twist"}


def expand_suites(names: Optional[Iterable[str]]) -> List[str]:
    """
    Normalize a suite selection to the canonical order.

    Args:
        names: Suite names, 'all', or None (everything)

    Raises:
        UsageError: unknown suite name
    """
    if not names:
        return list(SUITES)
    wanted = set()
    for name in names:
        if name == "all":
            wanted.update(SUITES)
        elif name in SUITES:
            wanted.add(name)
        else:
            raise UsageError(f"unknown suite {name!r} (choose from {', '.join(SUITES)}, all)")
    return [s for s in SUITES if s in wanted]


class Verifier:
    """Runs verification suites over one catalog."""

    def __init__(self, catalog: Catalog, tol: Tolerance = Tolerance(),
                 precision: Optional[Precision] = None, jobs: Optional[int] = None):
        """
        Args:
            catalog: Catalog to verify
            tol: Tolerance for every check
            precision: Overrides the catalog's own precision when given
            jobs: Worker threads for tuple sweeps (None: environment / auto)
        """
        self.catalog = catalog
        self.tol = tol
        self.precision = precision if precision is not None else catalog.precision
        self.jobs = resolve_jobs(jobs)
        self._runners: Dict[str, Callable[[], Section]] = {
            "ring": lambda: verify_ring(catalog.ring, tol),
            "modular": lambda: verify_modular(catalog.modular_data, tol),
            "pentagon": lambda: verify_pentagon(catalog.skeletal_data, tol, self.jobs),
            "hexagon": lambda: verify_hexagon(catalog.skeletal_data, tol, self.jobs),
            "fusion": lambda: verify_f_unitarity(catalog.skeletal_data, tol),
            "braid": lambda: verify_braid_relations(catalog.skeletal_data, tol),
            "transport": lambda: verify_transport(catalog.skeletal_data, tol, self.jobs, self.precision),
            "rigidity": lambda: rigidity_section(catalog.skeletal_data, tol, catalog.modular_data),
            "twist": lambda: verify_twist_compat(catalog.skeletal_data, catalog.modular_data, tol),
            "reflection": lambda: reflection_positivity_check(catalog.skeletal_data, tol),
            "fullfield": lambda: full_field_section(catalog.skeletal_data, tol, self.precision),
        }

    def skip_reason(self, suite: str) -> Optional[str]:
        if suite in NEEDS_SKELETAL and self.catalog.skeletal_data is None:
            return "catalog has no skeletal data"
        if suite in NEEDS_MODULAR and self.catalog.modular_data is None:
            return "catalog has no modular data"
        return None

    def run_suite(self, suite: str) -> Section:
        """Run one suite; data errors become a failed section instead of aborting the run."""
        reason = self.skip_reason(suite)
        if reason:
            logger.info("%s: skipped (%s)", suite, reason)
            return Section.skipped(suite, reason)

        logger.info("%s: running", suite)
        start = time.perf_counter()
        try:
            section = self._runners[suite]()
        except MtcForgeError as exc:
            logger.error("%s: %s", suite, exc)
            section = Section(suite, SuiteStatus.FAIL,
                              [Entry("error", False, detail={"error": f"{type(exc).__name__}: {exc}"})])
        section.seconds = time.perf_counter() - start
        logger.info("%s: %s in %.3fs", suite, section.status.value, section.seconds)
        return section

    def run(self, suites: Optional[Iterable[str]] = None) -> VerificationReport:
        """Run the selected suites (default: all) in canonical order."""
        report = VerificationReport(
            catalog_name=self.catalog.name,
            content_hash=catalog_hash(self.catalog),
            tolerance=self.tol,
            precision=self.precision.value,
        )
        for suite in expand_suites(suites):
            report.sections.append(self.run_suite(suite))
        logger.info("overall: %s", "PASS" if report.overall else "FAIL")
        return report


def verify_catalog(catalog: Catalog, suites: Optional[Iterable[str]] = None,
                   tol: Tolerance = Tolerance(), precision: Optional[Precision] = None,
                   jobs: Optional[int] = None) -> VerificationReport:
    """Convenience wrapper around Verifier.run."""
    return Verifier(catalog, tol, precision, jobs).run(suites)
