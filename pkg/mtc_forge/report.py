"""
Verification report model.

Each verifier returns a Section of named entries; the runner collects sections
into a VerificationReport that renders as canonical JSON or a text table.
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .algebra_core import Tolerance
from .errors import CatalogParseError


class SuiteStatus(Enum):
    """Outcome of one verification section."""
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass
class Entry:
    """One checked identity inside a section."""
    name: str
    passed: bool
    residual: Optional[float] = None
    worst_tuple: Optional[Tuple[int, ...]] = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "residual": _json_float(self.residual),
            "worst_tuple": list(self.worst_tuple) if self.worst_tuple is not None else None,
            "detail": {key: _json_value(value) for key, value in self.detail.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "Entry":
        worst = data.get("worst_tuple")
        return cls(
            name=data["name"],
            passed=data["passed"],
            residual=_parse_float(data.get("residual")),
            worst_tuple=tuple(worst) if worst is not None else None,
            detail=dict(data.get("detail", {})),
        )


@dataclass
class Section:
    """Result of one suite: PASS iff every entry passed."""
    name: str
    status: SuiteStatus
    entries: List[Entry] = field(default_factory=list)
    seconds: float = 0.0
    reason: str = ""

    @classmethod
    def from_entries(cls, name: str, entries: List[Entry]) -> "Section":
        status = SuiteStatus.PASS if all(e.passed for e in entries) else SuiteStatus.FAIL
        return cls(name=name, status=status, entries=entries)

    @classmethod
    def skipped(cls, name: str, reason: str) -> "Section":
        return cls(name=name, status=SuiteStatus.SKIPPED, reason=reason)

    @property
    def passed(self) -> bool:
        return self.status != SuiteStatus.FAIL

    def entry(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "reason": self.reason,
            "entries": [e.to_dict() for e in self.entries],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "Section":
        return cls(
            name=data["name"],
            status=SuiteStatus(data["status"]),
            entries=[Entry.from_dict(e) for e in data.get("entries", [])],
            reason=data.get("reason", ""),
        )


@dataclass
class VerificationReport:
    """All sections of one verification run over one catalog."""
    catalog_name: str
    content_hash: str
    tolerance: Tolerance
    precision: str
    sections: List[Section] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(s.passed for s in self.sections)

    def section(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> Dict:
        # Timings are left out so the machine form is deterministic.
        return {
            "catalog": {"name": self.catalog_name, "sha256": self.content_hash},
            "tolerance": self.tolerance.to_dict(),
            "precision": self.precision,
            "sections": [s.to_dict() for s in self.sections],
            "overall": "PASS" if self.overall else "FAIL",
        }


def emit_report(report: VerificationReport, fmt: str = "json") -> bytes:
    """
    Render a report.

    Args:
        report: Completed report
        fmt: 'json' (canonical machine form) or 'text' (summary table)

    Returns:
        bytes: UTF-8 encoded report
    """
    if fmt == "json":
        text = json.dumps(report.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"
        return text.encode("utf-8")
    if fmt == "text":
        return _render_text(report).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def report_from_json(raw: bytes) -> VerificationReport:
    """Parse the JSON form produced by emit_report."""
    try:
        data = json.loads(raw.decode("utf-8"))
        tol = data["tolerance"]
        return VerificationReport(
            catalog_name=data["catalog"]["name"],
            content_hash=data["catalog"]["sha256"],
            tolerance=Tolerance(tol["abs_eps"], tol["rel_eps"]),
            precision=data["precision"],
            sections=[Section.from_dict(s) for s in data["sections"]],
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise CatalogParseError(f"not a verification report: {exc}")


def _render_text(report: VerificationReport) -> str:
    lines = [
        "mtc-forge verification report",
        f"catalog:   {report.catalog_name} (sha256 {report.content_hash[:16]})",
        f"tolerance: abs {report.tolerance.abs_eps:.1e}  rel {report.tolerance.rel_eps:.1e}"
        f"  precision {report.precision}",
        "",
        f"{'SECTION':<11} {'STATUS':<8} {'TIME':>9}  {'ENTRY':<28} {'RESIDUAL':>10}  WORST",
        "-" * 84,
    ]
    for section in report.sections:
        head = f"{section.name:<11} {section.status.value:<8} {section.seconds:>8.3f}s"
        if section.status == SuiteStatus.SKIPPED or not section.entries:
            lines.append(f"{head}  {section.reason}")
            continue
        for idx, e in enumerate(section.entries):
            prefix = head if idx == 0 else " " * len(head)
            res = "-" if e.residual is None else f"{e.residual:.3e}"
            worst = "-" if e.worst_tuple is None else "(" + ", ".join(map(str, e.worst_tuple)) + ")"
            mark = "" if e.passed else "  <-- FAIL"
            lines.append(f"{prefix}  {e.name:<28} {res:>10}  {worst}{mark}")
    lines.append("-" * 84)
    lines.append(f"OVERALL: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(lines) + "\n"


def _json_float(x: Optional[float]):
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _parse_float(x):
    if x is None:
        return None
    return float(x)


def _json_value(value):
    if isinstance(value, complex):
        return [_json_float(value.real), _json_float(value.imag)]
    if isinstance(value, float):
        return _json_float(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if hasattr(value, "item"):  # numpy scalar
        return _json_value(value.item())
    return value
