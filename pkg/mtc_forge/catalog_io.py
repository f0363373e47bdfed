"""
Catalog storage.

Catalogs are JSON documents (schema version "1") holding a fusion ring and,
optionally, modular data and skeletal F/R data.  Saving is canonical: sorted
keys, two-space indent, shortest round-trip floats, complex numbers as
[re, im] pairs and a trailing newline, so equal catalogs have equal bytes and
equal hashes.
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .config import CATALOG_SCHEMA_VERSION, Precision
from .category_data import SkeletalData
from .errors import (
    CatalogParseError,
    CatalogValidationError,
    DomainError,
    FinitenessError,
    MtcForgeError,
)
from .fusion_ring import FusionRing
from .modular_data import ModularData
from .report import VerificationReport, emit_report, report_from_json  # noqa: F401

logger = logging.getLogger(__name__)

DEFAULT_FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@dataclass
class Catalog:
    """A named fusion ring with optional modular and skeletal data."""
    name: str
    ring: FusionRing
    generator: Dict[str, Any] = field(default_factory=lambda: {"family": "custom", "params": {}})
    modular_data: Optional[ModularData] = None
    skeletal_data: Optional[SkeletalData] = None
    precision: Precision = Precision.DOUBLE


# ============================================================================
# Loading
# ============================================================================

def _fail(path: str, message: str):
    raise CatalogParseError(message, path)


def _require(node, kind, path: str, what: str):
    if not isinstance(node, kind) or isinstance(node, bool) and kind is not bool:
        _fail(path, f"expected {what}")
    return node


def _number(node, path: str) -> float:
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        _fail(path, "expected a number")
    return float(node)


def _integer(node, path: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        _fail(path, "expected an integer")
    return node


def _complex(node, path: str) -> complex:
    if not isinstance(node, list) or len(node) != 2:
        _fail(path, "expected a [re, im] pair")
    return complex(_number(node[0], f"{path}[0]"), _number(node[1], f"{path}[1]"))


def _complex_matrix(node, path: str) -> np.ndarray:
    rows = _require(node, list, path, "a matrix")
    out = []
    for x, row in enumerate(rows):
        row = _require(row, list, f"{path}[{x}]", "a matrix row")
        out.append([_complex(v, f"{path}[{x}][{y}]") for y, v in enumerate(row)])
    if out and any(len(r) != len(out[0]) for r in out):
        _fail(path, "ragged matrix")
    return np.array(out, dtype=complex).reshape(len(out), len(out[0]) if out else 0)


def _parse_ring(node, path: str) -> FusionRing:
    node = _require(node, dict, path, "an object")
    labels = _require(node.get("labels"), list, f"{path}.labels", "a list of label names")
    for x, name in enumerate(labels):
        _require(name, str, f"{path}.labels[{x}]", "a string")
    n = len(labels)
    dual = _require(node.get("dual"), list, f"{path}.dual", "a list of label ids")
    dual = [_integer(v, f"{path}.dual[{x}]") for x, v in enumerate(dual)]
    fusion = _require(node.get("fusion"), list, f"{path}.fusion", "a list of [i, j, k, N] rows")
    N = np.zeros((n, n, n), dtype=np.int64)
    for x, row in enumerate(fusion):
        where = f"{path}.fusion[{x}]"
        if not isinstance(row, list) or len(row) != 4:
            _fail(where, "expected [i, j, k, N]")
        i, j, k, mult = (_integer(v, f"{where}[{y}]") for y, v in enumerate(row))
        if not all(0 <= t < n for t in (i, j, k)):
            _fail(where, f"label id out of range 0..{n - 1}")
        if mult < 0:
            raise CatalogValidationError("nonnegative integers", f"{where} has multiplicity {mult}")
        N[i, j, k] = mult
    return FusionRing(labels, dual, N)


def _parse_modular(node, ring: FusionRing, path: str) -> ModularData:
    node = _require(node, dict, path, "an object")
    S = _complex_matrix(node.get("S"), f"{path}.S")
    if S.shape != (ring.rank, ring.rank):
        raise CatalogValidationError("s shape", f"S has shape {S.shape}, expected rank {ring.rank}")
    weights = _require(node.get("weights"), list, f"{path}.weights", "a list of conformal weights")
    weights = [_number(v, f"{path}.weights[{x}]") for x, v in enumerate(weights)]
    if len(weights) != ring.rank:
        raise CatalogValidationError("weights shape", f"{len(weights)} weights for rank {ring.rank}")
    c = _number(node.get("central_charge"), f"{path}.central_charge")
    try:
        return ModularData.from_weights(ring, S, weights, c)
    except MtcForgeError as exc:
        raise CatalogValidationError("unitary quantum dimensions", str(exc))


def _parse_skeletal(node, ring: FusionRing, path: str) -> SkeletalData:
    node = _require(node, dict, path, "an object")
    F = {}
    for x, entry in enumerate(_require(node.get("F", []), list, f"{path}.F", "a list of F-blocks")):
        where = f"{path}.F[{x}]"
        entry = _require(entry, dict, where, "an object")
        labels = _require(entry.get("labels"), list, f"{where}.labels", "[a, b, c, d]")
        if len(labels) != 4:
            _fail(f"{where}.labels", "expected [a, b, c, d]")
        key = tuple(_integer(v, f"{where}.labels[{y}]") for y, v in enumerate(labels))
        if not all(0 <= t < ring.rank for t in key):
            _fail(f"{where}.labels", "label id out of range")
        rows = [_integer(v, f"{where}.rows[{y}]")
                for y, v in enumerate(_require(entry.get("rows"), list, f"{where}.rows", "a list"))]
        cols = [_integer(v, f"{where}.cols[{y}]")
                for y, v in enumerate(_require(entry.get("cols"), list, f"{where}.cols", "a list"))]
        a, b, c, d = key
        expected_rows = [e for e in ring.outcomes(b, c) if ring.N[a, e, d]]
        expected_cols = [f for f in ring.outcomes(a, b) if ring.N[f, c, d]]
        if rows != expected_rows or cols != expected_cols:
            raise CatalogValidationError(
                "f block channels", f"{where}: channels {rows}/{cols}, expected {expected_rows}/{expected_cols}")
        if key in F:
            raise CatalogValidationError("f block duplicate", f"{where}: block {key} given twice")
        F[key] = _complex_matrix(entry.get("matrix"), f"{where}.matrix")

    R = {}
    for x, entry in enumerate(_require(node.get("R", []), list, f"{path}.R", "a list of R-symbols")):
        where = f"{path}.R[{x}]"
        entry = _require(entry, dict, where, "an object")
        labels = _require(entry.get("labels"), list, f"{where}.labels", "[a, b, c]")
        if len(labels) != 3:
            _fail(f"{where}.labels", "expected [a, b, c]")
        key = tuple(_integer(v, f"{where}.labels[{y}]") for y, v in enumerate(labels))
        if not all(0 <= t < ring.rank for t in key):
            _fail(f"{where}.labels", "label id out of range")
        R[key] = _complex(entry.get("value"), f"{where}.value")

    ev = node.get("ev_norms")
    ev_norms = None
    if ev is not None:
        ev = _require(ev, list, f"{path}.ev_norms", "a list of [re, im] pairs")
        ev_norms = [_complex(v, f"{path}.ev_norms[{x}]") for x, v in enumerate(ev)]
    return SkeletalData(ring, F, R, ev_norms)


def load_catalog(raw: bytes) -> Catalog:
    """
    Parse and validate catalog bytes.

    Raises:
        CatalogParseError: empty input, invalid JSON or schema violation (with JSON path)
        CatalogValidationError: structural invariant violated (names the invariant)
    """
    if not raw or not raw.strip():
        raise CatalogParseError("empty catalog", "$")
    try:
        doc = json.loads(raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CatalogParseError(f"invalid JSON: {exc}", "$")
    doc = _require(doc, dict, "$", "a JSON object")

    version = doc.get("schema_version")
    if version != CATALOG_SCHEMA_VERSION:
        _fail("$.schema_version", f"unsupported schema version {version!r}")
    name = _require(doc.get("name"), str, "$.name", "a string")
    try:
        precision = Precision(doc.get("precision", Precision.DOUBLE.value))
    except ValueError:
        _fail("$.precision", "expected 'double' or 'extended'")
    generator = doc.get("generator", {"family": "custom", "params": {}})
    _require(generator, dict, "$.generator", "an object")

    ring = _parse_ring(doc.get("ring"), "$.ring")
    md = _parse_modular(doc["modular_data"], ring, "$.modular_data") if doc.get("modular_data") else None
    data = _parse_skeletal(doc["skeletal_data"], ring, "$.skeletal_data") if doc.get("skeletal_data") else None
    logger.debug("loaded catalog %s (rank %d, modular=%s, skeletal=%s)",
                 name, ring.rank, md is not None, data is not None)
    return Catalog(name=name, ring=ring, generator=generator, modular_data=md,
                   skeletal_data=data, precision=precision)


# ============================================================================
# Saving
# ============================================================================

def _pair(z) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def _matrix(M) -> List[List[List[float]]]:
    return [[_pair(v) for v in row] for row in np.asarray(M)]


def _check_finite(node, path: str = "$") -> None:
    if isinstance(node, float):
        if not math.isfinite(node):
            raise FinitenessError(f"{path} is not finite ({node})")
    elif isinstance(node, dict):
        for key, value in node.items():
            _check_finite(value, f"{path}.{key}")
    elif isinstance(node, list):
        for idx, value in enumerate(node):
            _check_finite(value, f"{path}[{idx}]")


def catalog_to_dict(catalog: Catalog) -> Dict:
    ring = catalog.ring
    doc = {
        "schema_version": CATALOG_SCHEMA_VERSION,
        "name": catalog.name,
        "precision": catalog.precision.value,
        "generator": catalog.generator,
        "ring": {
            "labels": ring.names,
            "dual": list(ring.dual),
            "fusion": [[i, j, k, ring.multiplicity(i, j, k)] for (i, j, k) in ring.admissible_triples()],
        },
    }
    md = catalog.modular_data
    if md is not None:
        if md.weights is not None:
            weights = [float(h) for h in md.weights]
        else:
            weights = [float(np.mod(np.angle(t) / (2 * np.pi), 1.0)) for t in md.theta]
        doc["modular_data"] = {
            "S": _matrix(md.S),
            "weights": weights,
            "central_charge": float(md.central_charge),
        }
    data = catalog.skeletal_data
    if data is not None:
        blocks = []
        for key in data.block_keys():
            rows, cols, matrix = data.f_block(*key)
            if 0 in key[:3] and np.array_equal(matrix, np.eye(len(rows))):
                continue
            blocks.append({"labels": list(key), "rows": rows, "cols": cols, "matrix": _matrix(matrix)})
        doc["skeletal_data"] = {
            "F": blocks,
            "R": [{"labels": list(key), "value": _pair(data.R[key])} for key in sorted(data.R)],
            "ev_norms": [_pair(mu) for mu in data.ev_norms],
        }
    return doc


def save_catalog(catalog: Catalog) -> bytes:
    """
    Canonical catalog bytes.

    Raises:
        FinitenessError: a NaN or infinite value would be written
    """
    doc = catalog_to_dict(catalog)
    _check_finite(doc)
    return (json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n").encode("utf-8")


def catalog_hash(catalog: Catalog) -> str:
    """sha256 of the canonical bytes."""
    return hashlib.sha256(save_catalog(catalog)).hexdigest()


# ============================================================================
# Bundled fixtures
# ============================================================================

class FixtureLibrary:
    """Catalog files stored as <name>.json in one directory."""

    def __init__(self, directory: Optional[Path] = None):
        """
        Args:
            directory: Fixture directory (defaults to the bundled fixtures/)
        """
        self.directory = Path(directory) if directory is not None else DEFAULT_FIXTURE_DIR

    def list_fixtures(self) -> List[str]:
        if not self.directory.is_dir():
            return []
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def has_fixture(self, name: str) -> bool:
        return self.path_of(name).is_file()

    def path_of(self, name: str) -> Path:
        return self.directory / f"{name}.json"

    def load(self, name: str) -> Catalog:
        """
        Load a fixture by name.

        Raises:
            DomainError: no such fixture
        """
        path = self.path_of(name)
        if not path.is_file():
            raise DomainError(f"no fixture named {name!r} in {self.directory}")
        return load_catalog(path.read_bytes())

    def save(self, catalog: Catalog, name: Optional[str] = None) -> Path:
        path = self.path_of(name or catalog.name)
        self.directory.mkdir(parents=True, exist_ok=True)
        path.write_bytes(save_catalog(catalog))
        logger.info("wrote fixture %s", path)
        return path
