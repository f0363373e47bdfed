"""
Configuration for mtc-forge.

Thresholds and defaults shared by the verifiers, the generators and the CLI.
"""

import os
from enum import Enum
from typing import Optional

from .errors import UsageError

# Tolerances
DEFAULT_ABS_EPS = 1e-9
DEFAULT_REL_EPS = 1e-9
VERLINDE_ROUNDING_FACTOR = 10  # Verlinde rounding threshold = factor * abs_eps
GAUGE_INVARIANCE_FACTOR = 10  # gauge-invariant quantities may drift by this multiple of tol

# Positivity certificates
CHOLESKY_CROSSCHECK_MAX_DIM = 64

# Extended precision
EXTENDED_PRECISION_DPS = 30  # decimal digits for mpmath evaluations

# Catalog format
CATALOG_SCHEMA_VERSION = "1"

# Parallelism
JOBS_ENV_VAR = "MTC_FORGE_JOBS"


class Precision(Enum):
    """Floating point precision requested by a catalog or a run."""
    DOUBLE = "double"
    EXTENDED = "extended"


def resolve_jobs(explicit: Optional[int] = None) -> int:
    """
    Resolve the parallelism degree.

    Args:
        explicit: Value of --jobs, if given (0 means auto)

    Returns:
        Number of worker threads (>= 1)
    """
    jobs = explicit
    if jobs is None:
        raw = os.environ.get(JOBS_ENV_VAR, "").strip()
        if raw:
            try:
                jobs = int(raw)
            except ValueError:
                raise UsageError(f"{JOBS_ENV_VAR} must be an integer, got {raw!r}")
        else:
            jobs = 0

    if jobs < 0:
        raise UsageError(f"parallelism must be >= 0, got {jobs}")
    if jobs == 0:
        jobs = os.cpu_count() or 1
    return jobs
