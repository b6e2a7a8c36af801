import json
import subprocess
import sys

import pytest

from virasoro.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_singvec_bdiz_json(capsys):
    code, out = run_cli(["singvec", "--method", "bdiz", "--j", "1/2", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["terms"] == {"[1,1]": "1", "[2]": "-t"}
    assert report["level"] == 2


def test_singvec_kernel(capsys):
    code, out = run_cli(
        ["singvec", "--method", "kernel", "--c", "1", "--h", "1/4", "--level", "2", "--json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 1
    assert report["vectors"][0]["terms"] == {"[1,1]": "1", "[2]": "-1"}


def test_singvec_usage_error(capsys):
    code, _ = run_cli(["singvec", "--method", "kernel"], capsys)
    assert code == 2


def test_kacdet_ratio(capsys):
    code, out = run_cli(["kacdet", "--level", "2", "--mode", "ratio", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["constant"] is True
    assert report["value"] == "32"


def test_gram_json_roundtrip(capsys):
    code, out = run_cli(["gram", "--c", "c", "--h", "h", "--level", "2", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["basis"] == ["[2]", "[1,1]"]
    # the document round-trips through its serialisation
    assert json.loads(json.dumps(report)) == report


def test_gram_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    code, out = run_cli(["gram", "--c", "1", "--h", "1/4", "--level", "1", "--json"], capsys)
    schema = {
        "type": "object",
        "required": ["level", "basis", "entries"],
        "properties": {
            "level": {"type": "integer"},
            "basis": {"type": "array", "items": {"type": "string"}},
            "entries": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "string"}},
            },
        },
    }
    jsonschema.validate(json.loads(out), schema)


def test_character_schema_and_values(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    code, out = run_cli(["character", "--c1", "--j", "1", "--N", "8", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    schema = {
        "type": "object",
        "required": ["leading_exponent", "coeffs", "order"],
        "properties": {
            "leading_exponent": {"type": "string"},
            "coeffs": {"type": "array", "items": {"type": "string"}},
            "order": {"type": "integer"},
        },
    }
    jsonschema.validate(report, schema)
    assert report["coeffs"] == ["1", "1", "2", "2", "4", "5", "8", "10", "15"]


def test_character_oracle_verdict(capsys):
    code, out = run_cli(
        ["character", "--discrete", "--m", "3", "--r", "2", "--s", "2", "--N", "5",
         "--check-oracle", "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_ffpoly_agreement(capsys):
    code, out = run_cli(["ffpoly", "--j", "1/2", "--lambda", "1", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["agree"] is True
    assert report["values"]["direct"] == report["values"]["determinant"]


def test_goldstone_check(capsys):
    code, out = run_cli(
        ["goldstone", "--j", "0", "--k", "1/2", "--m", "2", "--check", "--json"], capsys
    )
    # k = 1/2 with j = 0 violates k in j + Z
    assert code == 2
    code, out = run_cli(
        ["goldstone", "--j", "1/2", "--k", "1/2", "--m", "2", "--check", "--json"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["singular"] is True
    assert report["signature"] == [3, 3]


def test_binomdet_compare(capsys):
    code, out = run_cli(
        ["binomdet", "--f", "3,3,3", "--mu", "7/2", "--compare", "product", "--json"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["agree"] is True
    code, _ = run_cli(["binomdet", "--f", "3,1", "--mu", "2", "--compare", "product"], capsys)
    assert code == 2  # not a rectangle


def test_jantzen_verdict(capsys):
    code, out = run_cli(
        ["jantzen", "--case", "c1", "--j", "1", "--N", "4", "--json"], capsys
    )
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_fock_check_subset(capsys):
    code, out = run_cli(
        ["fock-check", "--emax", "2", "--pair-emax", "2", "--suite", "car,theta", "--json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert [s["name"] for s in report["suites"]] == ["car", "theta"]


def test_fock_check_unknown_suite(capsys):
    code, _ = run_cli(["fock-check", "--suite", "nope"], capsys)
    assert code == 2


def test_acceptance_subset(capsys):
    code, out = run_cli(["acceptance", "--suite", "gomes,binomial"], capsys)
    assert code == 0
    assert "PASS gomes" in out
    assert "PASS binomial" in out


def test_acceptance_unknown_criterion(capsys):
    code, _ = run_cli(["acceptance", "--suite", "nonsense"], capsys)
    assert code == 2


def test_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "virasoro.cli", "kacdet"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_out_file(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("VIRASORO_OUT_DIR", str(tmp_path))
    code, out = run_cli(
        ["kacdet", "--level", "1", "--json", "--out", "det.json"], capsys
    )
    assert code == 0
    on_disk = json.loads((tmp_path / "det.json").read_text())
    assert on_disk == json.loads(out)


def test_threads_flag_validated(capsys):
    with pytest.raises(SystemExit):
        main(["--threads", "0", "kacdet", "--level", "1"])


def test_jantzen_weight_path_doubles_orders(capsys):
    # the weight path at c = 1 crosses each vanishing curve with
    # multiplicity two; the subcommand accounts for that
    code, out = run_cli(
        ["jantzen", "--case", "c1", "--j", "1/2", "--path", "h", "--N", "4", "--json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] is True
    assert report["character_sum"]["coeffs"] == ["0", "0", "2", "2", "4"]


def test_jantzen_c_path_rejected_at_j_zero(capsys):
    code, _ = run_cli(["jantzen", "--case", "c1", "--j", "0", "--path", "c"], capsys)
    assert code == 2


def test_fock_check_window_too_small(capsys):
    code, _ = run_cli(["fock-check", "--emax", "1"], capsys)
    assert code == 2
