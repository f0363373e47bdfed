import json

import pytest

from mtc_forge.catalog_io import load_catalog, save_catalog
from mtc_forge.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, parse_config, run
from mtc_forge.errors import UsageError


def test_generate_to_file(tmp_path):
    out = tmp_path / "su2_k2.json"
    assert run(["generate", "su2", "--level", "2", "--out", str(out)]) == EXIT_OK
    catalog = load_catalog(out.read_bytes())
    assert catalog.name == "su2_k2"
    assert catalog.generator == {"family": "su2", "params": {"level": 2}}
    assert catalog.ring.rank == 3


def test_generate_to_stdout(capsys):
    assert run(["generate", "fibonacci"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["name"] == "fibonacci"
    assert doc["ring"]["labels"] == ["1", "tau"]


def test_generate_rejects_bad_parameters(capsys):
    assert run(["generate", "su2", "--level", "0"]) == EXIT_USAGE
    assert run(["generate", "minimal", "--m", "1"]) == EXIT_USAGE
    assert "mtc-forge" in capsys.readouterr().err


def test_verify_fixture_json(capsys):
    assert run(["verify", "ising", "--jobs", "1"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["overall"] == "PASS"
    assert report["catalog"]["name"] == "ising"


def test_verify_text_report(tmp_path):
    out = tmp_path / "report.txt"
    assert run(["verify", "trivial", "--format", "text", "--suite", "ring", "--suite", "pentagon",
                "--out", str(out)]) == EXIT_OK
    text = out.read_text()
    assert "pentagon" in text
    assert text.rstrip().endswith("OVERALL: PASS")


def test_verify_failing_catalog(tmp_path, ising_catalog, capsys):
    data = ising_catalog.skeletal_data
    data.R[(1, 1, 2)] = data.R[(1, 1, 2)].conjugate()
    path = tmp_path / "broken.json"
    path.write_bytes(save_catalog(ising_catalog))
    assert run(["verify", str(path), "--suite", "hexagon"]) == EXIT_FAIL
    report = json.loads(capsys.readouterr().out)
    assert report["sections"][0]["status"] == "FAIL"


@pytest.mark.parametrize("argv", [
    ["verify", "ising", "--bogus"],
    ["verify", "ising", "--tol", "0"],
    ["verify", "ising", "--suite", "pentagram"],
    ["verify", "no_such_catalog"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_malformed_catalog_is_a_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_bytes(b"{")
    assert run(["verify", str(path)]) == EXIT_USAGE
    assert "$" in capsys.readouterr().err


def test_parse_config_defaults():
    config = parse_config(["verify", "ising", "--jobs", "3", "--precision", "extended"])
    assert config.jobs == 3
    assert config.precision.value == "extended"
    assert config.format == "json"
    with pytest.raises(UsageError):
        parse_config(["verify", "ising", "--jobs", "-1"])


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "generate" in capsys.readouterr().out
