"""Command-line interface: output shapes, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from ghconnect.cli import main
from ghconnect.verify import VerificationReport

GEN2_ARGS = ["--n", "2", "--alpha", "0.21,0.43,0.87", "--beta", "1.13,0.59"]


def test_eval_json(capsys):
    code = main(["eval", *GEN2_ARGS, "--point", "0", "--z", "0.45",
                 "--output", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["point"] == "0"
    assert len(doc["values"]) == 3
    for re_part, im_part in doc["values"]:      # [re, im] pairs
        complex(re_part, im_part)


def test_eval_human(capsys):
    code = main(["eval", *GEN2_ARGS, "--point", "0", "--z", "0.45"])
    assert code == 0
    out = capsys.readouterr().out
    assert "F_1" in out and "F_3" in out


def test_eval_complex_parameters(capsys):
    code = main(["eval", "--n", "1", "--alpha", "0.3+0.1j,0.7-0.2j",
                 "--beta", "1.21+0.05j", "--point", "0", "--z", "0.45",
                 "--output", "json"])
    assert code == 0


def test_matrix_json_round_trip(capsys):
    code = main(["matrix", *GEN2_ARGS, "--kind", "one0", "--output", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "one0"
    rows = doc["entries"]
    assert len(rows) == 3 and len(rows[0]) == 3


def test_verify_suite_exit_zero(capsys):
    code = main(["verify", "--suite", "residues", "--seed", "1",
                 "--draws", "10", "--output", "json"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    reports = [json.loads(line) for line in lines]    # one report per line
    assert reports
    assert all(r["pass"] for r in reports)
    assert all(r["identity"].startswith("residue-") for r in reports)


def test_oracle_gauss(capsys):
    code = main(["oracle", "--method", "gauss", "--n", "1", "--alpha",
                 "0.3,0.7", "--beta", "1.21", "--kind", "one0",
                 "--output", "json"])
    assert code == 0
    json.loads(capsys.readouterr().out)


def test_oracle_quadrature(capsys):
    code = main(["oracle", "--method", "quadrature", "--n", "1", "--alpha",
                 "0.3,0.7", "--beta", "1.21", "--family", "D0", "--index",
                 "1", "--z", "-0.5", "--output", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert abs(doc["value"][0] - 5.19903521103) < 1e-9


def test_params_file(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps(
        {"n": 2, "alpha": [0.21, 0.43, 0.87], "beta": [1.13, 0.59]}))
    code = main(["matrix", "--params", str(f), "--kind", "inf0",
                 "--output", "json"])
    assert code == 0


# -- exit codes -----------------------------------------------------------------

def _stderr_doc(capsys):
    err = capsys.readouterr().err
    return json.loads(err)


def test_missing_parameters_is_config_error(capsys):
    code = main(["eval", "--n", "2", "--point", "0", "--z", "0.4"])
    assert code == 2
    assert _stderr_doc(capsys)["error"] == "config"


def test_malformed_complex_is_config_error(capsys):
    code = main(["eval", "--n", "1", "--alpha", "0.3,spam", "--beta", "1.21",
                 "--point", "0", "--z", "0.4"])
    assert code == 2
    assert _stderr_doc(capsys)["error"] == "config"


def test_series_pole_is_numerical_refusal(capsys):
    # beta difference of -2 puts a non-positive integer in a lower slot
    code = main(["eval", "--n", "2", "--alpha", "0.3,0.9,0.7", "--beta",
                 "1.21,3.21", "--point", "0", "--z", "0.4"])
    assert code == 3
    assert _stderr_doc(capsys)["error"] == "pole"


def test_degenerate_matrix_is_numerical_refusal(capsys):
    code = main(["matrix", "--n", "2", "--alpha", "0.21,0.43,0.87", "--beta",
                 "1.59,0.59", "--kind", "one0"])
    assert code == 3
    assert _stderr_doc(capsys)["error"] == "degenerate-matrix"


def test_outside_disk_is_numerical_refusal(capsys):
    code = main(["eval", *GEN2_ARGS, "--point", "0", "--z", "1.5"])
    assert code == 3
    assert _stderr_doc(capsys)["error"] == "series-refusal"


def test_failing_suite_is_exit_one(capsys, monkeypatch):
    bad = VerificationReport("inverse", 2, None, 1.0, 1e-10, False, 0, {})
    monkeypatch.setattr("ghconnect.cli.run_suite", lambda *a, **k: [bad])
    code = main(["verify", "--suite", "inverse", "--output", "json"])
    assert code == 1
    doc = json.loads(capsys.readouterr().out.strip().splitlines()[0])
    assert doc["pass"] is False


# -- determinism across processes -------------------------------------------------

def test_verify_json_is_byte_deterministic():
    cmd = [sys.executable, "-m", "ghconnect.cli", "verify", "--suite",
           "residues", "--seed", "1", "--draws", "20", "--output", "json"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
