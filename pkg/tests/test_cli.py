import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from mfkit.cli import main, run
from mfkit.cohomology import fibonacci_rep

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "dim_2222": ["dim", "--ell", "5", "--variant", "su2", "--genus", "0", "--colors", "2,2,2,2"],
    "props_so3": ["props", "--ell", "5", "--variant", "so3"],
    "certify_g6": ["certify", "--ell", "5", "--variant", "so3", "--g", "6"],
    "certify_g7": ["certify", "--ell", "5", "--variant", "so3", "--g", "7", "--explain"],
    "fusion_table_l3": ["fusion", "--ell", "3", "--table"],
    "embed_0_3": ["embed", "--ell", "5", "--triple", "0,3,1:1:2", "--gprime", "4"],
    "h1_fibonacci": ["h1", "--presentation", "builtin:triangle(5,5,5)", "--rep", "builtin:fibonacci", "--adjoint"],
}


@pytest.fixture(autouse=True)
def _no_config(monkeypatch):
    monkeypatch.delenv("MFKIT_CONFIG", raising=False)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out = run(CASES[name])
    assert code == 0
    ext = "csv" if "table" in name else "json"
    assert out == (GOLDEN / f"{name}.{ext}").read_text()


def test_documented_examples():
    assert json.loads(run(CASES["dim_2222"])[1]) == {"dim": 2}
    assert json.loads(run(CASES["props_so3"])[1]) == {"I": True, "II": True}
    code, out = run(CASES["certify_g6"])
    assert code == 0 and json.loads(out)["status"] == "failed"


@pytest.mark.parametrize("argv", [CASES["certify_g7"], CASES["embed_0_3"], ["twist", "--ell", "7"]])
def test_deterministic(argv):
    assert run(argv) == run(argv)
    assert run(argv) == run(argv + ["--seed", "123"])


def test_domain_errors_exit_1():
    code, out = run(["dim", "--ell", "5", "--genus", "0", "--colors", "9"])
    assert code == 1
    assert json.loads(out)["error"]["type"] == "InvalidColor"
    code, out = run(["fusion", "--ell", "6", "--variant", "so3", "--abc", "0,0,0"])
    assert code == 1 and json.loads(out)["error"]["type"] == "InvalidColorSet"


def test_usage_errors_exit_2(capsys):
    assert main(["dim", "--ell", "5", "--bogus"], out=io.StringIO()) == 2
    assert "--bogus" in capsys.readouterr().err
    assert run(["frobnicate"])[0] == 2
    assert main(["embed", "--ell", "5", "--triple", "x", "--gprime", "4"], out=io.StringIO()) == 2
    assert "--triple" in capsys.readouterr().err
    assert run(["oracle-check", "--ell", "5"])[0] == 2
    assert run(["h1", "--presentation", "builtin:free(1)", "--rep", "builtin:fibonacci", "--projective"])[0] == 2


def test_oracle_enabled():
    code, out = run(["oracle-check", "--ell", "5", "--enable-oracle", "--gmax", "2", "--nmax", "3"])
    assert code == 0 and json.loads(out)["mismatches"] == []


def test_csv_output():
    code, out = run(["dim", "--ell", "5", "--sweep", "1,2", "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["genus", "colors", "dim"]
    assert rows[1] == ["0", "", "1"] and all(len(r) == 3 for r in rows)


def test_config_file(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"ell": 5, "variant": "so3", "oracle": True}))
    monkeypatch.setenv("MFKIT_CONFIG", str(cfg))
    code, out = run(["dim", "--genus", "2", "--colors", ""])
    assert code == 0 and json.loads(out) == {"dim": 5}
    assert run(["oracle-check", "--gmax", "1", "--nmax", "2"])[0] == 0
    cfg.write_text(json.dumps({"format": "xml"}))
    code, out = run(["props", "--ell", "5"])
    assert code == 1 and json.loads(out)["error"]["pointer"] == "/format"


def test_h1_with_files(tmp_path):
    rep = tmp_path / "rep.json"
    rep.write_text(json.dumps(fibonacci_rep().to_json()))
    code, out = run(["h1", "--presentation", "builtin:triangle(5,5,5)", "--rep", str(rep)])
    assert code == 0 and json.loads(out)["dim_H0"] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 1, "order": 1, "generators": [[[0]], [[1]]]}))
    code, out = run(["h1", "--presentation", "builtin:triangle(2,3,5)", "--rep", str(bad)])
    assert code == 1 and "generator 1" in json.loads(out)["error"]["message"]
    code, out = run(["h1", "--presentation", "builtin:triangle(2,3,5)", "--rep", str(rep)])
    assert code == 1 and json.loads(out)["error"]["type"] == "NotARepresentation"


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "mfkit", "props", "--ell", "7"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"I": True, "II": True}
