"""CLI behaviour: exit codes, verification discipline, determinism."""

import json

import pytest

from hyperell.cli import main

SPLIT_QUINTIC = "4*x^5 - 10*x^4 - 4*x^3 + 9*x^2 + 6*x + 1"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_bound_table(capsys):
    code, out, _ = run(capsys, "rank-bound", "--curve", "x^5-1",
                       "--prime", "11")
    assert code == 0
    assert "p=11: 0" in out


def test_rank_bound_bad_prime_reports_unbounded(capsys):
    code, out, _ = run(capsys, "rank-bound", "--curve", "x^5-1",
                       "--prime", "5")
    assert code == 0
    assert "UNBOUNDED" in out


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "rank-bound", "--curve", "x^5 + $",
                       "--prime", "11")
    assert code == 2
    assert "error" in err


def test_factors_all_verified(capsys):
    code, out, _ = run(capsys, "factors", "--curve", "x*(x-1)*(x-2)",
                       "-m", "2")
    assert code == 0
    assert "kappa" in out


def test_integrate_pass(capsys):
    code, out, _ = run(capsys, "integrate", "--radicand", "x*(x-1)*(x-2)",
                       "--num", "x")
    assert code == 0
    assert "oracle: PASS" in out


def test_integrate_not_decomposable_exit_4(capsys):
    code, out, _ = run(capsys, "integrate", "--radicand", "x^5+x+1",
                       "--den", "x-2")
    assert code == 4
    assert "FAIL" in out
    assert ("hermite" in out) or ("divisor-reduction" in out)


def test_resource_budget_exit_3(capsys):
    code, _, err = run(capsys, "rank-bound", "--curve", "x^9-1",
                       "--prime", "19", "--budget-count", "10")
    assert code == 3
    assert "resource" in err


def test_json_deterministic(capsys):
    args = ("integrate", "--radicand", "x*(x-1)*(x-2)", "--den", "x-3",
            "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["schemaVersion"] == 1
    assert doc["oracle"] == "PASS"


def test_verify_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "integrate", "--radicand", SPLIT_QUINTIC,
                       "--den", "(6*x-17)^2", "--json")
    assert code == 0
    f = tmp_path / "stored.json"
    f.write_text(out)
    code, out2, _ = run(capsys, "verify", "--input", str(f))
    assert code == 0
    assert "PASS" in out2


def test_verify_rejects_tampered_expression(tmp_path, capsys):
    code, out, _ = run(capsys, "integrate", "--radicand", "x*(x-1)*(x-2)",
                       "--den", "x-3", "--json")
    doc = json.loads(out)
    doc["integrand"]["num"] = "x + 1"  # no longer matches the expression
    f = tmp_path / "tampered.json"
    f.write_text(json.dumps(doc))
    code, out2, _ = run(capsys, "verify", "--input", str(f))
    assert code == 4
    assert "FAIL" in out2


def test_zeta_json(capsys):
    code, out, _ = run(capsys, "zeta", "--curve", "x^5-1", "--prime", "11",
                       "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schemaVersion"] == 1
    assert doc["zeta"][0]["coefficients"][0] == 1
