import json

import pytest

from mtc_forge.catalog_io import (
    Catalog,
    FixtureLibrary,
    catalog_hash,
    emit_report,
    load_catalog,
    report_from_json,
    save_catalog,
)
from mtc_forge.errors import CatalogParseError, CatalogValidationError, DomainError, FinitenessError
from mtc_forge.forge_api import MtcForge
from mtc_forge.verifier import verify_catalog


def _doc(catalog):
    return json.loads(save_catalog(catalog))


def _load_doc(doc):
    return load_catalog(json.dumps(doc).encode("utf-8"))


def test_fixtures_are_listed(fixtures):
    names = fixtures.list_fixtures()
    assert "ising" in names and "trivial" in names
    assert fixtures.has_fixture("ising")
    with pytest.raises(DomainError):
        fixtures.load("toric_code_missing")


@pytest.mark.parametrize("source", ["ising", "trivial", "su2", "minimal", "fibonacci"])
def test_save_is_canonical(fixtures, source):
    if source in ("ising", "trivial"):
        catalog = fixtures.load(source)
    else:
        params = {"su2": {"level": 3}, "minimal": {"m": 4}}.get(source, {})
        catalog = MtcForge().generate(source, **params)
    raw = save_catalog(catalog)
    assert raw.endswith(b"\n")
    again = load_catalog(raw)
    assert save_catalog(again) == raw
    assert catalog_hash(again) == catalog_hash(catalog)
    assert len(catalog_hash(catalog)) == 64


def test_loaded_ising_matches_fixture_content(ising_catalog):
    assert ising_catalog.name == "ising"
    assert ising_catalog.ring.names == ["1", "sigma", "psi"]
    assert ising_catalog.modular_data.central_charge == 0.5
    assert ising_catalog.skeletal_data is not None


def test_fixture_library_save(tmp_path, ising_catalog):
    library = FixtureLibrary(tmp_path)
    path = library.save(ising_catalog, "copy")
    assert path.name == "copy.json"
    assert library.list_fixtures() == ["copy"]
    assert catalog_hash(library.load("copy")) == catalog_hash(ising_catalog)


@pytest.mark.parametrize("raw, path", [
    (b"", "$"),
    (b"{not json", "$"),
    (b"[1, 2]", "$"),
    (b'{"schema_version": "2"}', "$.schema_version"),
])
def test_parse_errors(raw, path):
    with pytest.raises(CatalogParseError) as excinfo:
        load_catalog(raw)
    assert excinfo.value.path == path


def test_parse_error_points_at_fusion_row(trivial_catalog):
    doc = _doc(trivial_catalog)
    doc["ring"]["fusion"].append([0, 0, "x", 1])
    with pytest.raises(CatalogParseError) as excinfo:
        _load_doc(doc)
    assert excinfo.value.path == "$.ring.fusion[1][2]"


def test_parse_error_points_at_r_value(ising_catalog):
    doc = _doc(ising_catalog)
    doc["skeletal_data"]["R"][4]["value"] = [1.0]
    with pytest.raises(CatalogParseError) as excinfo:
        _load_doc(doc)
    assert excinfo.value.path == "$.skeletal_data.R[4].value"


@pytest.mark.parametrize("mutate, invariant", [
    (lambda d: d["ring"].__setitem__("dual", [1, 1, 2]), "dual involution"),
    (lambda d: d["modular_data"].__setitem__("weights", [0.0, 0.5]), "weights shape"),
    (lambda d: d["skeletal_data"]["F"][0].__setitem__("rows", [0]), "f block channels"),
    (lambda d: d["skeletal_data"]["F"].append(dict(d["skeletal_data"]["F"][0])), "f block duplicate"),
    (lambda d: d["skeletal_data"].__setitem__("R", d["skeletal_data"]["R"][:-1]), "r missing"),
])
def test_validation_errors(ising_catalog, mutate, invariant):
    doc = _doc(ising_catalog)
    mutate(doc)
    with pytest.raises(CatalogValidationError) as excinfo:
        _load_doc(doc)
    assert excinfo.value.invariant == invariant


def test_non_finite_values_are_not_saved(ising_catalog):
    ising_catalog.modular_data.central_charge = float("nan")
    with pytest.raises(FinitenessError):
        save_catalog(ising_catalog)


def test_ring_only_catalog(ising_catalog):
    catalog = Catalog(name="ring_only", ring=ising_catalog.ring)
    again = load_catalog(save_catalog(catalog))
    assert again.modular_data is None and again.skeletal_data is None
    assert again.ring == ising_catalog.ring


def test_report_json_round_trip(ising_catalog):
    report = verify_catalog(ising_catalog, ["ring", "transport", "fullfield"])
    raw = emit_report(report, "json")
    parsed = report_from_json(raw)
    assert parsed.to_dict() == report.to_dict()
    assert emit_report(parsed, "json") == raw


def test_report_text(ising_catalog):
    text = emit_report(verify_catalog(ising_catalog, ["ring"]), "text").decode()
    assert "ring" in text
    assert text.rstrip().endswith("OVERALL: PASS")


def test_report_from_garbage():
    with pytest.raises(CatalogParseError):
        report_from_json(b'{"catalog": 1}')
