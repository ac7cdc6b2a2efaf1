import io
import json
import subprocess
import sys

import pytest

from dppe.cli import main
from _systems import DATA


def ex(k):
    return str(DATA / f"example{k}.dppe")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_implicitize_text(capsys):
    code, out, _ = run_cli(capsys, "implicitize", ex(1))
    assert code == 0
    assert out.startswith("dimension of ID is n-1=2\nimplicit equation: x3^(3) + x1''")


def test_implicitize_json_certificate(capsys):
    code, out, _ = run_cli(capsys, "implicitize", ex(2), "--json", "--certificate")
    data = json.loads(out)
    assert code == 0 and data["decision"] == "implicit"
    assert data["certificate"]["rank_ML1"] == "15"
    assert data["certificate"]["content"] == "d^2"


def test_implicitize_certificate_text(capsys):
    code, out, _ = run_cli(capsys, "implicitize", ex(1), "--certificate")
    assert "decided at step 7" in out and "D_phi = 1" in out


def test_explicit_perturbation(capsys):
    code, out, _ = run_cli(capsys, "implicitize", ex(1), "--perturbation", "u2'' + u1, u2, u1'", "--json", "--certificate")
    data = json.loads(out)
    assert data["certificate"]["D_phi"] == "2"


def test_zero_perturbation_exit_code(capsys):
    code, out, _ = run_cli(capsys, "implicitize", ex(1), "--perturbation", "none", "--json")
    assert code == 3
    assert json.loads(out)["error"]["type"] == "zero_resultant"


def test_resultant_unperturbed_is_zero(capsys):
    code, out, _ = run_cli(capsys, "resultant", ex(1), "--json")
    data = json.loads(out)
    assert code == 0 and data["dcres"]["text"] == "0"
    assert data["perturbation"] is None


def test_resultant_default_perturbation(capsys):
    code, out, _ = run_cli(capsys, "resultant", ex(1), "--perturbation", "default")
    assert code == 0
    assert "dCRes^h = " in out and "p^10" in out


def test_profile(capsys):
    code, out, _ = run_cli(capsys, "profile", ex(2), "--json")
    data = json.loads(out)
    assert (data["N"], data["L"], data["gamma"], data["rank_S"], data["rank_ML1"]) == ("6", "18", "1", "3", "15")


def test_profile_of_incomplete_system(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("x1 = 0\nx2 = 2\nx3 = u2' + 2*u1\n"))
    code, out, _ = run_cli(capsys, "profile", "-", "--json")
    data = json.loads(out)
    assert code == 0 and data["rank_ML1"] is None and data["rank_S"] == "1"


def test_oracle(capsys):
    code, out, _ = run_cli(capsys, "oracle", ex(1))
    assert code == 0
    assert "|G0| = 2" in out and "verdict: implicit" in out


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("x1 = u1\nx2 = u1' + 3\n"))
    code, out, _ = run_cli(capsys, "implicitize", "-")
    assert code == 0 and "implicit equation: x1' - x2 + 3 = 0" in out


def test_syntax_error(capsys, tmp_path):
    bad = tmp_path / "bad.dppe"
    bad.write_text("x1 = u1 +* u2\nx2 = u2\nx3 = u1\n")
    code, out, _ = run_cli(capsys, "implicitize", str(bad), "--json")
    err = json.loads(out)["error"]
    assert code == 2 and err["type"] == "syntax" and err["line"] == "1"


def test_semantic_error_text(capsys, tmp_path):
    bad = tmp_path / "bad.dppe"
    bad.write_text("x1 = u1*u2\nx2 = u2\nx3 = u1\n")
    code, _, err = run_cli(capsys, "implicitize", str(bad))
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "profile", str(tmp_path / "nope.dppe"), "--json")
    assert code == 2 and json.loads(out)["error"]["type"] == "io"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dppe", "implicitize", ex(1)], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "dimension of ID is n-1=2" in proc.stdout


def test_bad_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate", ex(1)])
