"""
mtc-forge: generate skeletal modular tensor category data and machine-check
transport-matrix positivity, braid and fusion unitarity, rigidity and
reflection positivity.
"""

from .algebra_core import Tolerance, is_hermitian_pd, is_unitary
from .catalog_io import Catalog, FixtureLibrary, catalog_hash, load_catalog, save_catalog
from .category_data import SkeletalData, gauge_transform, random_unit_gauge
from .config import Precision
from .errors import MtcForgeError
from .forge_api import MtcForge
from .fusion_ring import FusionRing, Label, fuse
from .modular_data import ModularData, quantum_dims, verlinde_fusion
from .report import SuiteStatus, VerificationReport, emit_report, report_from_json
from .verifier import SUITES, Verifier, verify_catalog

__version__ = "0.1.0"

__all__ = [
    "Catalog", "FixtureLibrary", "FusionRing", "Label", "ModularData", "MtcForge", "MtcForgeError",
    "Precision", "SUITES", "SkeletalData", "SuiteStatus", "Tolerance", "VerificationReport", "Verifier",
    "catalog_hash", "emit_report", "fuse", "gauge_transform", "is_hermitian_pd", "is_unitary",
    "load_catalog", "quantum_dims", "random_unit_gauge", "report_from_json", "save_catalog",
    "verify_catalog", "verlinde_fusion",
]
