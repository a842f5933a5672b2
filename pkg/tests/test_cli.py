"""Command-line interface: dispatch, exit codes, JSON determinism."""

import json

import pytest

from flagsplit.cli import main
from flagsplit.fpoly import SparsePolynomial, save_poly


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rs_show_json(capsys):
    code, out, _ = run(capsys, "rs", "show", "A2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["type"] == "A" and obj["rank"] == 2
    assert obj["rho"] == [1, 1]
    assert obj["coxeter_number"] == 3
    assert obj["min_good_prime"] == 2
    assert len(obj["positive_roots"]) == 3


def test_rs_show_g2(capsys):
    code, out, _ = run(capsys, "rs", "show", "G2", "--json")
    obj = json.loads(out)
    assert obj["min_good_prime"] == 5 and obj["N"] == 6


def test_weight_reduce(capsys):
    code, out, _ = run(capsys, "weight", "reduce", "A2",
                       "--weight", "-1,1", "--degree", "1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["steps"] == [1]
    assert obj["outcome"] == "dominant"
    assert obj["dominant_weight"] == [1, 0]
    assert obj["remaining_degree"] == 0


def test_weight_reduce_vanishes(capsys):
    code, out, _ = run(capsys, "weight", "reduce", "A1",
                       "--weight", "-1", "--degree", "0")
    assert code == 0
    assert "AllCohomologyVanishes" in out


def test_weight_outside_cone_is_input_error(capsys):
    code, _, err = run(capsys, "weight", "reduce", "A2",
                       "--weight", "-2,0", "--degree", "1")
    assert code == 2
    assert "input error" in err


def test_char_commands(capsys):
    code, out, _ = run(capsys, "char", "weyl", "A2", "--weight", "1,1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["dimension"] == 8
    code, out, _ = run(capsys, "char", "euler", "A1", "--weight", "-5", "--json")
    obj = json.loads(out)
    assert obj["dimension"] == -4
    code, out, _ = run(capsys, "char", "sym", "A2", "--degree", "1", "--json")
    assert json.loads(out)["dimension"] == 3
    code, out, _ = run(capsys, "char", "sym", "A2", "--degree", "1",
                       "--parabolic", "1", "--json")
    assert json.loads(out)["dimension"] == 2
    code, out, _ = run(capsys, "char", "ext", "A2", "--j", "3", "--json")
    assert json.loads(out)["character"] == [{"weight": [-2, -2], "mult": 1}]
    code, out, _ = run(capsys, "char", "trunc", "A2", "--p", "2", "--json")
    assert json.loads(out)["dimension"] == 8


def test_filt_command(capsys):
    code, out, _ = run(capsys, "filt", "A1", "--weight", "0",
                       "--max-degree", "4", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["all_ok"] is True
    dims = [d["dimension"] for d in obj["degrees"]]
    assert dims == [1, 3, 5, 7, 9]


def test_filt_parabolic(capsys):
    code, out, _ = run(capsys, "filt", "A2", "--weight", "0,2",
                       "--max-degree", "2", "--parabolic", "1", "--json")
    assert code == 0
    assert json.loads(out)["all_ok"] is True


def test_g1_command(capsys):
    code, out, _ = run(capsys, "g1", "A1", "--word", "1", "--weight", "1",
                       "--p", "3", "--max-i", "3", "--json")
    assert code == 0
    obj = json.loads(out)
    dims = {c["i"]: c["dimension"] for c in obj["cohomology"]}
    assert dims == {0: 0, 1: 2, 2: 0, 3: 4}


def test_g1_bad_p(capsys):
    code, _, err = run(capsys, "g1", "A1", "--word", "", "--weight", "1", "--p", "2")
    assert code == 2


def test_poly_check_exit_codes(capsys, tmp_path):
    good = tmp_path / "good.json"
    save_poly(SparsePolynomial(3, ("x",), {(2,): 1}), str(good))
    code, out, _ = run(capsys, "poly", "check", "--file", str(good))
    assert code == 0 and "splitting" in out

    bad = tmp_path / "bad.json"
    save_poly(SparsePolynomial(3, ("x",), {(1,): 1}), str(bad))
    code, out, _ = run(capsys, "poly", "check", "--file", str(bad))
    assert code == 1

    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, _, err = run(capsys, "poly", "check", "--file", str(broken))
    assert code == 2


def test_poly_trace(capsys, tmp_path):
    f = tmp_path / "f.json"
    g = tmp_path / "g.json"
    save_poly(SparsePolynomial(3, ("x",), {(2,): 1}), str(f))
    save_poly(SparsePolynomial(3, ("x",), {(3,): 1}), str(g))
    out_path = tmp_path / "out.json"
    code, _, _ = run(capsys, "poly", "trace", "--file", str(f),
                     "--times", str(g), "--out", str(out_path))
    assert code == 0
    obj = json.loads(out_path.read_text())
    assert obj["terms"] == [{"e": [1], "c": 1}]


def test_poly_compat(capsys, tmp_path):
    f = tmp_path / "f.json"
    save_poly(SparsePolynomial(2, ("x1", "x2"), {(1, 1): 1}), str(f))
    code, out, _ = run(capsys, "poly", "compat", "--file", str(f), "--ideal", "x1")
    assert code == 0
    f2 = tmp_path / "f2.json"
    save_poly(SparsePolynomial(2, ("x1", "x2"), {(0, 0): 1, (1, 1): 1}), str(f2))
    code, out, _ = run(capsys, "poly", "compat", "--file", str(f2), "--ideal", "x1")
    assert code == 1


def test_sln_commands(capsys, tmp_path):
    code, _, _ = run(capsys, "sln", "check", "--n", "1", "--p", "3")
    assert code == 0
    out_path = tmp_path / "chart.json"
    code, _, _ = run(capsys, "sln", "build", "--n", "1", "--p", "3",
                     "--out", str(out_path))
    assert code == 0
    obj = json.loads(out_path.read_text())
    assert obj["p"] == 3 and obj["vars"] == ["y21", "x12"]
    # the written chart passes the generic poly checker
    code, _, _ = run(capsys, "poly", "check", "--file", str(out_path))
    assert code == 0

    code, out, _ = run(capsys, "sln", "mvk", "--n", "2", "--p", "2",
                       "--compat", "1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["splitting"] is True and obj["compatible"] is True

    code, out, _ = run(capsys, "sln", "canonical", "--n", "1", "--p", "3", "--json")
    assert code == 0
    assert json.loads(out)["canonical"] is True

    code, out, _ = run(capsys, "sln", "parabolic", "--n", "2", "--p", "2",
                       "--subset", "1", "--json")
    assert code == 0
    assert json.loads(out)["splitting"] is True


def test_verify_fpoly(capsys):
    code, out, _ = run(capsys, "verify", "fpoly", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "pass"
    assert all(c["status"] in ("pass", "skip") for c in obj["checks"])


def test_verify_sln(capsys):
    code, out, _ = run(capsys, "verify", "sln", "--n", "1", "--p", "5", "--json")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_charalg_rank_capped(capsys):
    code, out, _ = run(capsys, "verify", "charalg", "--rank-cap", "1", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "pass"
    names = [c["name"] for c in obj["checks"]]
    assert any(name.startswith("charalg.graded_sections[A1") for name in names)


def test_json_reports_are_byte_identical(capsys):
    _, out1, _ = run(capsys, "verify", "fpoly", "--seed", "42", "--json")
    _, out2, _ = run(capsys, "verify", "fpoly", "--seed", "42", "--json")
    assert out1 == out2
    _, out3, _ = run(capsys, "verify", "fpoly", "--seed", "43", "--json")
    assert json.loads(out3)["config"]["seed"] == 43


def test_usage_error(capsys):
    assert main(["nonsense"]) == 2
    assert main(["rs", "show", "Z9"]) == 2


def test_subprocess_byte_determinism():
    import subprocess
    import sys

    cmd = [sys.executable, "-m", "flagsplit.cli", "verify", "fpoly",
           "--seed", "7", "--json"]
    r1 = subprocess.run(cmd, capture_output=True, text=True)
    r2 = subprocess.run(cmd, capture_output=True, text=True)
    assert r1.returncode == 0 and r1.stdout == r2.stdout
