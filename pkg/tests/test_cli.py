import json
import math
import subprocess
import sys

import pytest

from dprime_pair.cli import run
from dprime_pair.formatting import parse_csv_value

MATRIX = [
    ["eigen", "--beta", "-1", "--x0", "0.5", "--branch", "both"],
    ["eigen", "--beta", "-2.5", "--x0", "3", "--branch", "ground"],
    ["sweep", "--axis", "x0", "--beta", "-1", "--lo", "0.01", "--hi", "10", "--points", "40", "--spacing", "log"],
    ["sweep", "--axis", "beta", "--x0", "0.2", "--lo", "-10", "--hi", "-0.1", "--points", "30"],
    ["resonances", "--family", "ground", "--alpha", "-6", "--max-pairs", "2"],
    ["resonances", "--family", "excited", "--beta", "-1", "--x0", "2.75"],
    ["cutoff", "--beta", "-1", "--x0", "1", "--absE", "1", "--n-max", "50"],
    ["limits", "--beta", "-1", "--mode", "coalesce"],
    ["limits", "--beta", "-1", "--mode", "degeneracy"],
    ["eigenfunction", "--beta", "-1", "--x0", "0.5", "--branch", "excited", "--points", "101"],
]


def invoke(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def csv_records(text):
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, map(parse_csv_value, line.split(",")))) for line in lines[1:]]


def same_value(a, b):
    if isinstance(b, str) and b in ("inf", "-inf", "nan"):
        return str(a) == b
    if isinstance(b, float) or isinstance(a, float):
        return float(a) == float(b) or (math.isnan(float(a)) and math.isnan(float(b)))
    return a == b


@pytest.mark.parametrize("argv", MATRIX, ids=lambda a: " ".join(a[:3]))
def test_deterministic_and_formats_agree(capsys, argv):
    c1, csv1, _ = invoke(capsys, argv + ["--format", "csv"])
    c2, csv2, _ = invoke(capsys, argv + ["--format", "csv"])
    j1 = invoke(capsys, argv + ["--format", "json"])[1]
    j2 = invoke(capsys, argv + ["--format", "json"])[1]
    assert c1 == c2 == 0
    assert csv1 == csv2 and j1 == j2
    rows_csv, rows_json = csv_records(csv1), json.loads(j1)
    assert len(rows_csv) == len(rows_json) > 0
    for a, b in zip(rows_csv, rows_json):
        assert list(a) == list(b)
        assert all(same_value(a[k], b[k]) for k in a)


def test_eigen_json_keys(capsys):
    code, out, _ = invoke(capsys, MATRIX[0] + ["--format", "json"])
    rows = json.loads(out)
    assert code == 0 and [r["branch"] for r in rows] == ["ground", "excited"]
    assert all(list(r) == ["beta", "x0", "branch", "energy", "residual"] for r in rows)


def test_eigen_degenerate_pair(capsys):
    code, out, _ = invoke(capsys, ["eigen", "--beta", "-1", "--x0", "5", "--format", "json"])
    E0, E1 = (r["energy"] for r in json.loads(out))
    assert round(E0, 7) == round(E1, 7) == -4.0


def test_beta_sign_rejected(capsys):
    code, out, err = invoke(capsys, ["eigen", "--beta", "1", "--x0", "0.5"])
    assert code == 2 and out == ""
    assert "--beta" in err and "beta must be negative" in err


@pytest.mark.parametrize("argv,flag", [
    (["sweep", "--axis", "x0", "--beta", "-1", "--lo", "0.01", "--hi", "10", "--points", "1"], "--points"),
    (["resonances", "--family", "excited", "--alpha", "1"], "--alpha"),
    (["resonances", "--family", "excited", "--alpha", "-1", "--beta", "-1", "--x0", "1"], "--alpha"),
    (["resonances", "--family", "excited"], "--alpha"),
    (["eigen", "--x0", "1"], "--beta"),
    (["eigen", "--beta", "-1", "--x0", "-1"], "--x0"),
    (["cutoff", "--beta", "-1", "--x0", "1", "--n-max", "0"], "--n-max"),
    (["limits", "--beta", "-1", "--mode", "coalesce", "--x0-values", "0.001,0.1"], "--x0-values"),
    (["eigenfunction", "--beta", "-1", "--x0", "1", "--xmin", "2", "--xmax", "1"], "--xmin"),
    (["eigen", "--beta", "nan", "--x0", "1"], "--beta"),
])
def test_usage_errors(capsys, argv, flag):
    code, out, err = invoke(capsys, argv)
    assert code == 2 and out == ""
    assert flag in err


def test_unknown_flag_and_missing_command(capsys):
    assert invoke(capsys, ["eigen", "--bogus", "1"])[0] == 2
    assert invoke(capsys, [])[0] == 2
    assert invoke(capsys, ["sweep", "--axis", "energy"])[0] == 2


def test_numerical_failure_exit_code(capsys):
    code, out, err = invoke(capsys, ["eigen", "--beta", "-1", "--x0", "1.3", "--tol", "1e-300"])
    assert code == 3 and out == "" and "numerical failure" in err
    code, _, _ = invoke(capsys, ["cutoff", "--beta", "-1", "--x0", "1", "--max-subdivisions", "0",
                                 "--rel-tol", "1e-16", "--abs-tol", "1e-300"])
    assert code == 3


def test_sweep_row_count(capsys):
    code, out, _ = invoke(capsys, ["sweep", "--axis", "x0", "--beta", "-1", "--lo", "0.01", "--hi", "10",
                                   "--points", "200", "--spacing", "log"])
    assert code == 0 and len(out.strip().splitlines()) == 201
    assert out.splitlines()[0] == "axis,value,E0,E1,gap,residual0,residual1"


def test_resonances_from_beta_and_x0(capsys):
    code, out, _ = invoke(capsys, ["resonances", "--family", "excited", "--beta", "-1", "--x0", "2.75",
                                   "--format", "json"])
    rows = json.loads(out)
    assert code == 0 and rows and all(r["alpha"] == -11.0 and r["q2"] < 0.0 for r in rows)


def test_resonances_curve_dump(capsys):
    code, out, _ = invoke(capsys, ["resonances", "--family", "ground", "--alpha", "-3", "--dump-curves",
                                   "--curve-samples", "41", "--format", "json"])
    payload = json.loads(out)
    assert code == 0 and set(payload) == {"poles", "curves"}
    assert {c["equation"] for c in payload["curves"]} == {"real", "imag"}
    code, text, _ = invoke(capsys, ["resonances", "--family", "ground", "--alpha", "-3", "--dump-curves",
                                    "--curve-samples", "41"])
    poles, curves = text.split("\n\n")
    for part, key in ((poles, "poles"), (curves, "curves")):
        rows = csv_records(part)
        assert len(rows) == len(payload[key]) > 0
        for a, b in zip(rows, payload[key]):
            assert all(same_value(a[k], b[k]) for k in a)


def test_cutoff_deltas_decay(capsys):
    code, out, _ = invoke(capsys, ["cutoff", "--beta", "-1", "--x0", "1", "--absE", "1", "--n-max", "1000"])
    rows = csv_records(out)
    assert code == 0 and rows[0]["n"] == 2 and rows[-1]["n"] == 1000
    assert rows[-1]["delta_sin"] < rows[100]["delta_sin"] < rows[10]["delta_sin"]


def test_limits_coalesce_sin_column(capsys):
    code, out, _ = invoke(capsys, ["limits", "--beta", "-1", "--mode", "coalesce"])
    rows = csv_records(out)
    assert code == 0
    assert abs(rows[-1]["sin_coefficient"] + 1.0 / math.pi) < 1e-5


def test_eigenfunction_parity(capsys):
    code, out, _ = invoke(capsys, ["eigenfunction", "--beta", "-1", "--x0", "0.5", "--branch", "excited",
                                   "--xmin", "-5", "--xmax", "5", "--points", "1001"])
    rows = csv_records(out)
    assert code == 0 and len(rows) == 1001
    for a, b in zip(rows, reversed(rows)):
        assert a["x"] == -b["x"] and a["f"] == -b["f"]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# solver setup\nbeta = -2\nx0=1\ntol=1e-13\n")
    code, out, _ = invoke(capsys, ["eigen", "--config", str(cfg), "--branch", "ground", "--format", "json"])
    assert code == 0 and json.loads(out)[0]["beta"] == -2.0
    code, out, _ = invoke(capsys, ["eigen", "--config", str(cfg), "--beta", "-1", "--format", "json"])
    assert code == 0 and json.loads(out)[0]["beta"] == -1.0
    cfg.write_text("rel_tol=1e-9\nabs-tol=1e-11\n")
    code, _, _ = invoke(capsys, ["cutoff", "--beta", "-1", "--x0", "1", "--n-max", "5", "--config", str(cfg)])
    assert code == 0
    cfg.write_text("mystery=1\n")
    code, _, err = invoke(capsys, ["eigen", "--config", str(cfg), "--beta", "-1", "--x0", "1"])
    assert code == 2 and "--config" in err
    code, _, _ = invoke(capsys, ["eigen", "--config", str(tmp_path / "missing.cfg")])
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "e.csv"
    code, out, _ = invoke(capsys, MATRIX[0] + ["--out", str(target)])
    again = invoke(capsys, MATRIX[0])[1]
    assert code == 0 and out == "" and target.read_text() == again


def test_module_entry_point():
    cmd = [sys.executable, "-m", "dprime_pair", "eigen", "--beta", "-1", "--x0", "0.5", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)[0]["branch"] == "ground"
    bad = subprocess.run(cmd[:3] + ["eigen", "--beta", "1", "--x0", "1"], capture_output=True, text=True)
    assert bad.returncode == 2 and "beta must be negative" in bad.stderr
