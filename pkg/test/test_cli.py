import json
import os

import pytest

from engine.core import EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE
from exactnum.errors import UsageError
from main import build_engine
from settings import Settings

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(capsys, *argv, settings=None):
    code = build_engine(settings=settings).run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_qexp_of_j(capsys):
    code, out, _ = run(capsys, "qexp", "--family", "j", "--terms", "3")
    assert code == EXIT_OK
    assert out.strip() == "q^-1 + 744 + 196884*q + O(q^2)"


def test_qexp_of_a_siegel_member(capsys):
    code, out, _ = run(capsys, "qexp", "--family", "siegel", "--N", "2", "--v", "1/2,0", "--n", "2",
                       "--terms", "2")
    assert code == EXIT_OK
    assert "q^-1 - 48*q^(-1/2) + O(1)" in out


def test_qexp_json_is_deterministic(capsys):
    argv = ("qexp", "--family", "fricke", "--N", "3", "--v", "1/3,0", "--terms", "4", "--json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert json.loads(first)["trunc"] is not None


def test_qexp_needs_an_index(capsys):
    code, out, err = run(capsys, "qexp", "--family", "fricke", "--N", "3")
    assert code == EXIT_USAGE
    assert out == ""
    assert "--v is required" in err


def test_unknown_flags_are_usage_errors(capsys):
    assert run(capsys, "qexp", "--bogus")[0] == EXIT_USAGE
    assert run(capsys, "nonsense")[0] == EXIT_USAGE
    assert run(capsys, "qn-set", "--N", "5", "-v", "-q")[0] == EXIT_USAGE


def test_qn_set(capsys):
    code, out, _ = run(capsys, "qn-set", "--N", "15")
    assert code == EXIT_OK
    assert out.strip() == "4"
    code, out, _ = run(capsys, "qn-set", "--N", "13", "--json")
    assert json.loads(out) == {"level": 13, "qn_set": [5]}
    assert run(capsys, "qn-set", "--N", "8")[0] == EXIT_USAGE


def test_family_check_reports_the_witness(capsys):
    argv = ("family-check", "--family", "diff:2", "--N", "5", "--total", "--terms", "20")
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "diff:2 level 5 T=20: NotTotallyPrimitive"
    assert lines[1].startswith("witness:")
    assert "ConstantRatioCandidate(-1, order=2)" in lines[1]
    assert run(capsys, *argv, "--expect", "not-totally-primitive")[0] == EXIT_OK
    assert run(capsys, *argv, "--expect", "TotallyPrimitive")[0] == EXIT_NEGATIVE


def test_expect_rejects_unknown_verdicts(capsys):
    code, _, err = run(capsys, "family-check", "--family", "fricke", "--N", "3", "--expect", "maybe")
    assert code == EXIT_USAGE
    assert "--expect" in err


def test_family_check_json(capsys):
    code, out, _ = run(capsys, "family-check", "--family", "siegel", "--N", "3", "--terms", "10", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["verdict"] == "Primitive"


def test_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", "--family", "siegel", "--N", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "siegel^24 level 2 base [1/2,0] over SL2/+-Gamma(N): 6 elements"
    code, out, _ = run(capsys, "orbit", "--family", "siegel", "--N", "2", "--json")
    data = json.loads(out)
    assert data["orders"] == ["-1", "2"]
    assert len(data["entries"]) == 6


def test_stabilizer_command(capsys):
    code, out, _ = run(capsys, "stabilizer", "--N", "2", "--terms", "10", "--expect", "TrivialStabilizer")
    assert code == EXIT_OK
    assert out.splitlines()[0].endswith("TrivialStabilizer")
    assert run(capsys, "stabilizer", "--family", "diff:2", "--N", "5")[0] == EXIT_USAGE


def test_cm_command(capsys):
    code, out, _ = run(capsys, "cm", "--N", "3", "--dk", "-7", "--json", "--expect", "distinct")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["verdict"] == "Distinct"
    assert len(data["conjugates"]) == 4
    assert run(capsys, "cm", "--N", "3", "--dk", "-4")[0] == EXIT_USAGE
    assert run(capsys, "cm", "--N", "3", "--dk", "-12")[0] == EXIT_USAGE


def test_out_writes_a_file(capsys, tmp_path):
    target = tmp_path / "j.txt"
    code, out, _ = run(capsys, "qexp", "--family", "j", "--terms", "3", "--out", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text(encoding="utf-8") == "q^-1 + 744 + 196884*q + O(q^2)\n"


@pytest.mark.slow
def test_model_command_matches_golden_file(capsys):
    code, out, _ = run(capsys, "model", "--N", "2", "--n", "1")
    assert code == EXIT_OK
    with open(os.path.join(DATA, "model_N2_n1.txt"), encoding="utf-8") as f:
        assert out == f.read()


def test_settings_from_environment():
    settings = Settings({"FRICKE_TERMS": "5", "FRICKE_TOL": "1e-9", "FRICKE_WORKERS": "3"})
    assert settings.trunc == 5
    assert settings.tol == 1e-9
    assert settings.workers == 3
    assert settings.prec_bits == 128
    with pytest.raises(UsageError):
        Settings({"FRICKE_TERMS": "many"})
    with pytest.raises(UsageError):
        Settings({"FRICKE_WORKERS": "0"})


def test_settings_supply_the_default_truncation(capsys):
    settings = Settings({"FRICKE_TERMS": "3"})
    code, out, _ = run(capsys, "qexp", "--family", "j", settings=settings)
    assert code == EXIT_OK
    assert out.strip() == "q^-1 + 744 + 196884*q + O(q^2)"


def test_invalid_environment_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("FRICKE_PREC_BITS", "lots")
    assert run(capsys, "qn-set", "--N", "5")[0] == EXIT_USAGE
