import json
import random
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import zoo
from quandle_tensor import validate_quandle
from quandle_tensor.cli import main
from quandle_tensor.qdl import format_qdl

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "golden, argv",
    [
        ("r3_tensor.json", ["tensor", DATA / "r3.qdl", "--quotient", "tau"]),
        (
            "dr3_tensor.json",
            ["tensor", DATA / "dr3.qdl", "--quotient", "tau", "--quotient", "rho", "--quotient", "tau,rho"],
        ),
        ("r3_handles_double.json", ["handles", "dihedral:3", "--double"]),
    ],
)
def test_golden_json(capsys, golden, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_tensor_r3_text(capsys):
    code, out, _ = run(capsys, "tensor", DATA / "r3.qdl")
    assert code == 0
    assert out.splitlines()[0].endswith("2 classes")


def test_output_is_deterministic(capsys):
    argv = ["tensor", "dihedral:8", "--quotient", "tau", "--format", "json"]
    outs = {run(capsys, *argv)[1] for _ in range(3)}
    assert len(outs) == 1


def test_check_valid_and_invalid(capsys, tmp_path):
    code, out, _ = run(capsys, "check", DATA / "r3.qdl")
    assert code == 0 and "valid" in out and "involution: good" in out
    bad = tmp_path / "bad.qdl"
    bad.write_text("quandle\nn 2\ntable\n0 0\n0 1\n")
    code, out, _ = run(capsys, "check", bad, "--format", "json")
    doc = json.loads(out)
    assert code == 1 and not doc["quandle"] and doc["violations"][0][0] == "Q2"


def test_check_bad_involution(capsys):
    code, out, _ = run(capsys, "check", "dihedral:3", "--rho", "1,0,2")
    assert code == 1 and "involution: " in out and "violation" in out


def test_double_then_check(capsys, tmp_path):
    out_path = tmp_path / "d.qdl"
    assert run(capsys, "double", "dihedral:6", "-o", out_path)[0] == 0
    code, out, _ = run(capsys, "check", out_path)
    assert code == 0 and "involution: good" in out


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(0, 2**32 - 1))
def test_double_output_always_checks(capsys, tmp_path, seed):
    q = validate_quandle(zoo.random_quandle(random.Random(seed), 6))
    src = tmp_path / f"q{seed}.qdl"
    src.write_text(format_qdl(q))
    dst = tmp_path / f"d{seed}.qdl"
    assert run(capsys, "double", src, "-o", dst)[0] == 0
    assert run(capsys, "check", dst)[0] == 0


def test_components(capsys):
    code, out, _ = run(capsys, "components", "dihedral:6", "--format", "json")
    assert code == 0 and json.loads(out)["components"] == [[0, 2, 4], [1, 3, 5]]


def test_dihedral_verify(capsys):
    code, out, _ = run(capsys, "dihedral-verify", "--max", "12")
    assert code == 0
    assert out.splitlines()[-1] == "144/144 comparisons passed"


def test_dihedral_verify_json(capsys):
    code, out, _ = run(capsys, "dihedral-verify", "--min", "3", "--max", "4", "--no-double", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and [r["n"] for r in doc["results"]] == [3, 4]


def test_homs(capsys):
    code, out, _ = run(capsys, "homs", DATA / "twist_spun_1.qpres", "dihedral:3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 9 and doc["generators"] == ["a", "b"]


def test_homs_cap(capsys):
    code, _, err = run(capsys, "homs", DATA / "twist_spun_1.qpres", "dihedral:5", "--cap", "10")
    assert code == 2 and "exceeds the cap" in err


def test_invariant(capsys):
    code, out, _ = run(
        capsys, "invariant", DATA / "twist_spun_1.qpres", "dihedral:3",
        "--assign", "a=0,b=1", "--pair", "a", "b", "--format", "json",
    )
    doc = json.loads(out)
    assert code == 0 and doc["label"] == "E(1)" and doc["class"] == 1


def test_invariant_weak_text(capsys):
    code, out, _ = run(
        capsys, "invariant", DATA / "twist_spun_1.qpres", "dihedral:3",
        "--assign", "a=0,b=1", "--pair", "a", "a^(b)", "--mode", "weak", "--rho", "0,1,2",
    )
    assert code == 0 and "block mod <tau,rho>" in out


def test_invariant_errors(capsys):
    pres = DATA / "twist_spun_1.qpres"
    code, _, err = run(capsys, "invariant", pres, "dihedral:3", "--assign", "a=0", "--pair", "a", "b")
    assert code == 2 and "missing ['b']" in err
    code, _, err = run(capsys, "invariant", pres, "dihedral:3", "--assign", "a=0,b=1", "--pair", "a", "z")
    assert code == 2 and "unknown generator" in err


def test_handles_text(capsys):
    code, out, _ = run(capsys, "handles", "dihedral:5", "--double")
    assert code == 0
    assert [line.split(":")[1].strip() for line in out.splitlines()[:4]] == ["3", "3", "12", "6"]


def test_tensor_quotient_needs_rho(capsys):
    code, _, err = run(capsys, "tensor", "dihedral:3", "--quotient", "rho")
    assert code == 2 and "needs an involution" in err
    code, _, err = run(capsys, "tensor", "dihedral:3", "--quotient", "sigma")
    assert code == 2


def test_empty_table_is_usage_error(capsys):
    code, _, err = run(capsys, "tensor", DATA / "empty.qdl")
    assert code == 2 and "empty.qdl:2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "tensor", tmp_path / "none.qdl")
    assert code == 2 and "cannot read" in err


def test_bad_table_is_validation_failure(capsys, tmp_path):
    bad = tmp_path / "bad.qdl"
    bad.write_text("quandle\nn 2\ntable\n0 0\n0 1\n")
    code, _, err = run(capsys, "tensor", bad)
    assert code == 1 and "Q2 fails" in err


def test_presentation_error_names_file_line_col(capsys, tmp_path):
    p = tmp_path / "bad.qpres"
    p.write_text("gens a\nrel a = a^(b)\n")
    code, _, err = run(capsys, "homs", p, "dihedral:3")
    assert code == 2 and f"{p}:2:12: unknown generator 'b'" in err


def test_builtin_zero_rejected(capsys):
    assert run(capsys, "components", "dihedral:0")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quandle_tensor", "tensor", "dihedral:3", "--format", "json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["counts"] == {"classes": 2}
