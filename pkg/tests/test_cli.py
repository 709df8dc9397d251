"""Command-line interface: exit codes, determinism, JSON and CSV output."""

import json
import os
import subprocess
import sys

import pytest

from varlagr.cli import CATALOG, _exit_code, main


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "varlagr.cli"] + args,
                          capture_output=True, text=True)
    return proc


def test_report_hermite_passes(tmp_path):
    code = main(["report", "hermite", "--n", "2", "--json",
                 "--csv-dir", str(tmp_path)])
    assert code == 0
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["schema"] == "varlagr/1"
    assert data["equation"]["name"] == "hermite"
    labels = {c["label"]: c for c in data["checks"]}
    assert labels["ml_annihilation"]["verdict"] == "PASS"
    assert labels["nsl_recovery"]["verdict"] == "PASS"
    assert labels["helmholtz_one"]["verdict"] == "FAIL"
    assert labels["helmholtz_one"]["expected"] == "FAIL"
    assert labels["helmholtz_E_s"]["verdict"] == "PASS"


def test_airy_notes_vanishing_mixed(capsys):
    code = main(["report", "airy"])
    assert code == 0
    out = capsys.readouterr().out
    assert "identically zero" in out
    assert "factor 2" in out


def test_all_catalog_equations_exit_zero():
    for name in CATALOG:
        assert main(["report", name]) == 0


def test_custom_harmonic_oscillator():
    assert main(["custom", "--B", "0", "--C", "1",
                 "--domain", "0", "6.28"]) == 0


def test_custom_caldirola_kanai_params(capsys):
    code = main(["custom", "--B", "g", "--C", "w^2", "--domain", "0", "6",
                 "-p", "g=0.1", "-p", "w=1"])
    assert code == 0
    out = capsys.readouterr().out
    assert "helmholtz_one" in out


def test_custom_subset_member():
    assert main(["custom", "--B", "1/(8*x)", "--C", "3/(16*x^2)",
                 "--domain", "0.2", "4"]) == 0


def test_invalid_expression_exits_2(capsys):
    code = main(["custom", "--B", "1/(", "--C", "1", "--domain", "0", "1"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_unbound_name_exits_2(capsys):
    code = main(["custom", "--B", "qq*x", "--C", "1", "--domain", "0", "1"])
    assert code == 2
    err = capsys.readouterr().err
    assert "qq" in err


def test_unknown_equation_exits_2():
    proc = run_cli(["report", "lame"])
    assert proc.returncode == 2


def test_bad_parameter_exits_2(capsys):
    code = main(["report", "hermite", "-p", "oops"])
    assert code == 2


def test_exit_code_reflects_verdicts():
    bundle = {"checks": [{"verdict": "PASS", "expected": "PASS"},
                         {"verdict": "FAIL", "expected": "FAIL"}]}
    assert _exit_code(bundle) == 0
    bundle["checks"].append({"verdict": "FAIL", "expected": "PASS"})
    assert _exit_code(bundle) == 1


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["report", "bessel-regular", "--mu", "0",
                     "--seed", "7", "--csv-dir", str(d)]) == 0
    for fname in os.listdir(a):
        assert (a / fname).read_bytes() == (b / fname).read_bytes()


def test_seed_changes_trial_paths(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["report", "hermite", "--seed", "1", "--csv-dir", str(a)])
    main(["report", "hermite", "--seed", "2", "--csv-dir", str(b)])
    assert (a / "standard_el.csv").read_bytes() != \
        (b / "standard_el.csv").read_bytes()


def test_csv_columns(tmp_path):
    main(["report", "legendre", "--l", "2", "--csv-dir", str(tmp_path)])
    for fname in ("standard_el.csv", "ml_annihilation.csv", "riccati.csv",
                  "recovery.csv", "corollary6.csv"):
        lines = (tmp_path / fname).read_text().strip().splitlines()
        assert lines[0] == "x,residual"
        assert len(lines) > 1
        x, r = lines[1].split(",")
        float(x), float(r)


def test_rendered_es_closed_forms(tmp_path):
    cases = {"airy": "1", "bessel-spherical": "x^2", "legendre": "(1 - x^2)",
             "hermite": "exp(-x^2/2)"}
    for name, want in cases.items():
        d = tmp_path / name
        main(["report", name, "--csv-dir", str(d)])
        data = json.loads((d / "report.json").read_text())
        assert data["lagrangians"]["E_s"] == want
