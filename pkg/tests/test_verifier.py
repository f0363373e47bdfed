import numpy as np
import pytest

from conftest import replace_r
from mtc_forge.catalog_io import Catalog, emit_report
from mtc_forge.errors import UsageError
from mtc_forge.families import fibonacci_data
from mtc_forge.forge_api import MtcForge, summary
from mtc_forge.fusion_ring import FusionRing
from mtc_forge.report import SuiteStatus
from mtc_forge.verifier import SUITES, Verifier, expand_suites, verify_catalog

SIGMA, PSI = 1, 2


def test_expand_suites():
    assert expand_suites(None) == list(SUITES)
    assert expand_suites(["all"]) == list(SUITES)
    assert expand_suites(["braid", "ring", "ring"]) == ["ring", "braid"]
    with pytest.raises(UsageError):
        expand_suites(["pentagram"])


@pytest.mark.parametrize("name", ["ising", "trivial"])
def test_fixtures_pass_every_suite(fixtures, name):
    report = verify_catalog(fixtures.load(name))
    assert [s.name for s in report.sections] == list(SUITES)
    failed = {s.name: [e.to_dict() for e in s.entries] for s in report.sections if not s.passed}
    assert report.overall, failed
    assert all(s.status == SuiteStatus.PASS for s in report.sections)


def test_generated_su2_passes():
    forge = MtcForge()
    report = forge.verify(forge.generate("su2", level=3))
    assert report.overall
    assert set(summary(report).values()) == {"PASS"}


def test_modular_only_catalog_skips_skeletal_suites():
    catalog = MtcForge().generate("minimal", m=5)
    report = verify_catalog(catalog)
    assert report.overall
    assert report.section("ring").status == SuiteStatus.PASS
    assert report.section("modular").status == SuiteStatus.PASS
    for name in ("pentagon", "hexagon", "braid", "transport", "twist", "fullfield"):
        section = report.section(name)
        assert section.status == SuiteStatus.SKIPPED
        assert section.reason == "catalog has no skeletal data"


def test_missing_modular_data_skips_modular_suites(ising_catalog):
    ising_catalog.modular_data = None
    report = verify_catalog(ising_catalog)
    assert report.section("modular").status == SuiteStatus.SKIPPED
    assert report.section("twist").reason == "catalog has no modular data"
    assert report.section("pentagon").status == SuiteStatus.PASS


def test_broken_r_symbol_fails_only_braiding_suites(ising_catalog):
    data = ising_catalog.skeletal_data
    ising_catalog.skeletal_data = replace_r(data, (SIGMA, SIGMA, PSI), np.conj(data.r(SIGMA, SIGMA, PSI)))
    report = verify_catalog(ising_catalog)
    assert not report.overall
    statuses = summary(report)
    assert statuses["hexagon"] == "FAIL"
    for name in ("ring", "modular", "pentagon", "fusion", "reflection"):
        assert statuses[name] == "PASS", name


def test_data_error_becomes_failed_section(ising_catalog):
    _, fib_md = fibonacci_data()
    ising_catalog.modular_data = fib_md
    section = Verifier(ising_catalog).run_suite("twist")
    assert section.status == SuiteStatus.FAIL
    assert "DomainError" in section.entry("error").detail["error"]


@pytest.mark.parametrize("source", ["trivial", "ising", ("su2", 2), ("su2", 4), ("minimal", 4), "fibonacci"])
def test_parallel_runs_are_byte_identical(fixtures, source):
    if isinstance(source, tuple):
        family, param = source
        catalog = MtcForge().generate(family, **{"level" if family == "su2" else "m": param})
    elif fixtures.has_fixture(source):
        catalog = fixtures.load(source)
    else:
        catalog = MtcForge().generate(source)
    single = emit_report(verify_catalog(catalog, jobs=1), "json")
    many = emit_report(verify_catalog(catalog, jobs=8), "json")
    assert single == many


def test_report_header(ising_catalog):
    report = Verifier(ising_catalog, jobs=1).run(["ring"])
    data = report.to_dict()
    assert data["catalog"]["name"] == "ising"
    assert data["precision"] == "double"
    assert data["overall"] == "PASS"
    assert len(data["catalog"]["sha256"]) == 64
    assert "seconds" not in data["sections"][0]


def test_skeletal_only_catalog(ising_catalog):
    catalog = Catalog(name="bare", ring=ising_catalog.ring, skeletal_data=ising_catalog.skeletal_data)
    report = verify_catalog(catalog, ["pentagon", "modular"])
    assert [s.name for s in report.sections] == ["modular", "pentagon"]
    assert report.overall


def test_flattened_twist_fails_only_twist_suite(ising_catalog):
    ising_catalog.modular_data.theta = np.ones(3, dtype=complex)
    statuses = summary(verify_catalog(ising_catalog))
    assert statuses["twist"] == "FAIL"
    assert [name for name, status in statuses.items() if status != "PASS"] == ["twist"]


def test_corrupted_fusion_fails_only_ring_suite(ising_catalog):
    N = ising_catalog.ring.N.copy()
    N[PSI, PSI, PSI] = 1
    catalog = Catalog(name="corrupted", ring=FusionRing(ising_catalog.ring.names, [0, 1, 2], N))
    statuses = summary(verify_catalog(catalog))
    assert statuses["ring"] == "FAIL"
    assert {s for name, s in statuses.items() if name != "ring"} == {"SKIPPED"}
