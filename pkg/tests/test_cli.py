import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from quatqm.cli import main
from quatqm.documents import (DocumentError, lambda_family_from_dict, load_document,
                              stationary_family_from_dict, step_problem_from_dict, to_dict)
from quatqm.stationary import ConstraintViolation, FamilyTag, random_family
from quatqm.time_evolution import LambdaFamily, LambdaKind

EXAMPLE = Path(__file__).resolve().parents[1] / "data" / "example.json"


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


# -- documents -----------------------------------------------------------------

@pytest.mark.parametrize("tag", list(FamilyTag))
def test_family_round_trip(tag):
    fam = random_family(np.random.default_rng(11), tag)
    back = stationary_family_from_dict(json.loads(json.dumps(to_dict(fam))))
    x = np.random.default_rng(0).normal(size=(4, 3))
    assert back(x).allclose(fam(x), rtol=0, atol=0)


def test_lambda_round_trip():
    fam = LambdaFamily(LambdaKind.MIXED, 0.9, xi=0.35, tau0=0.8)
    d = to_dict(fam)
    assert to_dict(lambda_family_from_dict(json.loads(json.dumps(d)))) == d


def test_pointer_in_errors():
    with pytest.raises(DocumentError, match="^/x/gamma_vec/1: expected a number"):
        stationary_family_from_dict({"family_tag": "K1_ZERO", "gamma_vec": [0, "a", 1],
                                     "omega_vec": [0, 0, 0], "alpha_vec": [0, 1, 0]}, "/x")
    with pytest.raises(DocumentError, match="^/bogus: unknown field"):
        lambda_family_from_dict({"kind": "complex", "energy_E": 1, "bogus": 2})
    with pytest.raises(DocumentError, match="^/kind: expected one of"):
        lambda_family_from_dict({"kind": "sideways", "energy_E": 1})
    with pytest.raises(DocumentError, match="^/step/gamma_perp: missing"):
        step_problem_from_dict({"k": 1.0, "omega_perp": [0, 0, 1]}, "/step")


def test_inconsistent_complex_energy():
    d = to_dict(random_family(np.random.default_rng(2), "K1_ZERO", with_phi=True))
    d["complex_E"] += 1
    with pytest.raises(DocumentError, match="complex_E"):
        stationary_family_from_dict(d)


def test_quaternionic_constant_is_a_violation():
    d = to_dict(random_family(np.random.default_rng(2), "COSW_K0"))
    d["C1"] = [1, 0, 0.5, 0]
    with pytest.raises(ConstraintViolation, match="complex constants violated"):
        stationary_family_from_dict(d)


def test_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(DocumentError, match="invalid JSON at line 1"):
        load_document(p)


# -- commands ------------------------------------------------------------------

@pytest.mark.parametrize("cmd", ["verify-time", "verify-stationary", "scatter-sweep"])
def test_example_document_passes(cmd, tmp_path):
    assert main([cmd, "--input", str(EXAMPLE), "--output", str(tmp_path / "out")]) == 0


def test_verify_report_records_seed(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify-stationary", "--input", str(EXAMPLE), "--output", str(out), "--seed", "17"]) == 0
    rep = json.loads(out.read_text())
    assert rep["metadata"]["seed"] == 17 and rep["passed"]
    assert len(rep["results"]) == 4


def test_scatter_sweep_column(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["scatter-sweep", "--input", str(EXAMPLE), "--output", str(out)]) == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert [float(r[1]) for r in rows] == pytest.approx([1, 0.75, 0.5, 0.25], abs=1e-12)


def test_free_particle_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["free-particle", "--input", str(EXAMPLE), "--output", str(a), "--seed", "3"]) == 0
    assert main(["free-particle", "--input", str(EXAMPLE), "--output", str(b), "--seed", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a_current.csv").read_bytes() == (tmp_path / "b_current.csv").read_bytes()


def test_empty_list_warns(tmp_path, caplog):
    p = write(tmp_path, {"stationary_families": []})
    assert main(["verify-stationary", "--input", str(p)]) == 0
    assert "nothing verified" in caplog.text


def test_failure_exit_code(tmp_path):
    p = write(tmp_path, {"lambda_families": [{"kind": "complex", "energy_E": 1.0}]})
    # an impossible tolerance turns the check into a failure
    assert main(["verify-time", "--input", str(p), "--tol", "1e-30"]) == 1


def test_parse_error_exit_code(tmp_path, capsys):
    p = write(tmp_path, {"stationary_families": [{"family_tag": "K1_ZERO", "gamma_vec": [0, 0]}]})
    assert main(["verify-stationary", "--input", str(p)]) == 2
    assert "/stationary_families/0/gamma_vec" in capsys.readouterr().err


def test_constraint_violation_is_named(tmp_path, capsys):
    fam = {"family_tag": "K1_ZERO", "gamma_vec": [0, 0, 0.5], "omega_vec": [0, 0, 1], "alpha_vec": [0, 0.79, 0]}
    p = write(tmp_path, {"stationary_families": [fam]})
    assert main(["verify-stationary", "--input", str(p)]) == 2
    assert "gamma-omega gap violated: |omega| > |gamma|" in capsys.readouterr().err


def test_usage_errors(tmp_path):
    assert main([]) == 2
    assert main(["verify-time"]) == 2
    assert main(["verify-time", "--input", str(tmp_path / "missing.json")]) == 2
    assert main(["free-particle", "--input", str(EXAMPLE)]) == 2
    assert main(["verify-time", "--input", str(EXAMPLE), "--tol", "-1"]) == 2


def test_console_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "quatqm.cli", "verify-time", "--input", str(EXAMPLE)],
                       capture_output=True, text=True, env={"QQM_LOG": "debug", "PATH": ""})
    assert r.returncode == 0, r.stderr
    assert r.stdout.count("PASS") == 3
