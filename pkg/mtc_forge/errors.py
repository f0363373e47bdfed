"""Exception hierarchy for mtc-forge.

Verification failures are report entries, never exceptions; everything below
signals malformed input or a broken generator.
"""

from typing import Optional, Tuple


class MtcForgeError(Exception):
    """Base class for all mtc-forge errors."""


class DimensionError(MtcForgeError):
    """Matrix has the wrong shape for the requested test."""


class NumericError(MtcForgeError):
    """A numerical routine failed (e.g. the eigensolver did not converge)."""

    def __init__(self, message: str, iterations: Optional[int] = None):
        super().__init__(message)
        self.iterations = iterations


class DomainError(MtcForgeError):
    """Argument outside the domain of an operation (bad label, bad parameter)."""


class PreconditionError(MtcForgeError):
    """Input violates a documented precondition."""


class NotModularError(MtcForgeError):
    """Verlinde formula produced non-integral or negative fusion multiplicities."""

    def __init__(self, message: str, worst: Tuple[int, int, int], deviation: float):
        super().__init__(f"{message} (worst triple {worst}, deviation {deviation:.3e})")
        self.worst = worst
        self.deviation = deviation


class NotUnitaryModularError(MtcForgeError):
    """Quantum dimensions are complex or smaller than one."""


class UnsupportedDataError(MtcForgeError):
    """F/R verification only handles multiplicity-free data."""


class DataError(MtcForgeError):
    """Skeletal data is singular or corrupted."""


class GenerationError(MtcForgeError):
    """A family generator failed its own consistency check."""


class CatalogParseError(MtcForgeError):
    """Catalog bytes are not valid JSON or do not follow the schema."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class CatalogValidationError(MtcForgeError):
    """Catalog parsed but a structural invariant is violated."""

    def __init__(self, invariant: str, message: str = ""):
        text = invariant if not message else f"{invariant}: {message}"
        super().__init__(text)
        self.invariant = invariant


class FinitenessError(MtcForgeError):
    """NaN or infinite value where a finite scalar is required."""


class UsageError(MtcForgeError):
    """Command-line usage error (exit code 2)."""
