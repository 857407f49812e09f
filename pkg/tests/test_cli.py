import io as stdio
import json
from pathlib import Path

import pytest

from fixtures import rand_poly
from kron_ansatz import io, linalg
from kron_ansatz.ansatz import AnsatzParams, build_pencil, random_params
from kron_ansatz.cli import run
from kron_ansatz.matpoly import from_coeffs

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

PIPELINES = [
    ("frobenius", "quadratic", None),
    ("frobenius", "cubic", None),
    ("g", "cubic", "cubic_g.json"),
    ("l1", "cubic", "cubic_l1.json"),
    ("l2", "cubic", "cubic_l2.json"),
    ("dl", "cubic", "cubic_dl.json"),
    ("blockkron", "cubic", "cubic_blockkron.json"),
    ("dg", "quartic", "quartic_dg.json"),
    ("bg", "quartic", "quartic_bg.json"),
]


def call(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write(path, obj):
    path.write_text(io.dumps(obj))
    return path


def write_poly(path, P):
    return write(path, io.poly_to_json(P))


@pytest.mark.parametrize("family,poly,params", PIPELINES)
def test_build_then_verify_samples(tmp_path, family, poly, params):
    argv = ["build", "--family", family, "--poly", SAMPLES / f"{poly}.json",
            "--out", tmp_path / "L.json"]
    if params:
        argv += ["--params", SAMPLES / params]
    code, out, _ = call(*argv)
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == family
    assert doc["pencil"] == json.loads((tmp_path / "L.json").read_text())
    code, out, _ = call("verify", "--pencil", tmp_path / "L.json",
                        "--poly", SAMPLES / f"{poly}.json")
    assert code == 0
    assert json.loads(out)["strong_linearization"] == "yes"


def test_build_membership_report():
    _, out, _ = call("build", "--family", "dg", "--poly", SAMPLES / "quartic.json",
                     "--params", SAMPLES / "quartic_dg.json")
    report = json.loads(out)["membership"]
    assert report["superpartition"] == [1, 2]
    assert report["linearization_condition"] == "yes"
    _, out, _ = call("build", "--family", "dl", "--poly", SAMPLES / "cubic.json",
                     "--params", SAMPLES / "cubic_dl.json")
    report = json.loads(out)["membership"]
    assert report["block_symmetric"] and report["l1_equation"] and report["l2_equation"]


def test_verify_zero_alpha_is_no(tmp_path):
    P = rand_poly(4, 2, 3)
    params = random_params(5, 1, 1, 2, 2, invertible_C=True)
    params = AnsatzParams(0, params.B1, params.B2, params.C1, params.C2, 1, 1, 2, 2)
    write_poly(tmp_path / "P.json", P)
    write_poly(tmp_path / "L.json", build_pencil(P, params))
    code, out, _ = call("verify", "--pencil", tmp_path / "L.json", "--poly", tmp_path / "P.json")
    assert code == 2
    assert "pencil not regular" in json.loads(out)["notes"]


def test_verify_singular_poly_sufficient_only(tmp_path):
    E = linalg.matrix([[1, 0], [0, 0]])
    write_poly(tmp_path / "P.json", from_coeffs([E, E, E]))
    call("build", "--family", "frobenius", "--poly", tmp_path / "P.json",
         "--out", tmp_path / "L.json")
    code, _, _ = call("verify", "--pencil", tmp_path / "L.json", "--poly", tmp_path / "P.json")
    assert code == 3


def test_verify_grade_override(tmp_path):
    code, _, _ = call("build", "--family", "frobenius", "--poly", SAMPLES / "quadratic.json",
                      "--out", tmp_path / "L.json")
    code, _, err = call("verify", "--pencil", tmp_path / "L.json",
                        "--poly", SAMPLES / "quadratic.json", "--grade", 1)
    assert code == 65 and "grade" in err


def test_verify_batch(tmp_path):
    batch = tmp_path / "batch"
    batch.mkdir()
    _, out, _ = call("build", "--family", "frobenius", "--poly", SAMPLES / "cubic.json")
    P = json.loads((SAMPLES / "cubic.json").read_text())
    L = json.loads(out)["pencil"]
    write(batch / "a.json", {"pencil": L, "poly": P})
    code, out, _ = call("verify", "--batch", batch)
    assert code == 0 and json.loads(out)["a.json"]["strong_linearization"] == "yes"
    bad = dict(L, coeffs=[L["coeffs"][0], [["0"] * 6 for _ in range(6)]])
    write(batch / "b.json", {"pencil": bad, "poly": P})
    (batch / "c.json").write_text("{not json")
    code, out, _ = call("verify", "--batch", batch, "--jobs", 2)
    report = json.loads(out)
    assert code == 2
    assert report["b.json"]["strong_linearization"] == "no"
    assert "error" in report["c.json"]


def test_recover(tmp_path):
    call("build", "--family", "frobenius", "--poly", SAMPLES / "quadratic.json",
         "--out", tmp_path / "L.json")
    code, out, _ = call("recover", "--pencil", tmp_path / "L.json",
                        "--poly", SAMPLES / "quadratic.json", "--eta", 0)
    assert code == 0
    doc = json.loads(out)
    assert doc["ansatz_alpha"] == "1"
    assert sum(p["multiplicity"] for p in doc["eigenpairs"]) == 4
    for pair in doc["eigenpairs"]:
        assert pair["right_residual"] <= 1e-8 and pair["left_residual"] <= 1e-8


def test_shift(tmp_path):
    P = rand_poly(1, 1, 7)
    write_poly(tmp_path / "P.json", P)
    code, out, _ = call("random", "--family", "dg", "--seed", 3, "--poly", tmp_path / "P.json",
                        "--eta", 1)
    (tmp_path / "dg.json").write_text(out)
    code, out, _ = call("shift", "--poly", tmp_path / "P.json", "--params", tmp_path / "dg.json",
                        "--i", 2)
    assert code == 0
    doc = json.loads(out)
    assert doc["round_trip"] is True
    assert (doc["shifted"]["eta"], doc["shifted"]["eps"]) == (3, 3)
    code, _, err = call("shift", "--poly", tmp_path / "P.json", "--params", tmp_path / "dg.json",
                        "--i", 3)
    assert code == 1 and err


def test_basis(tmp_path):
    code, out, _ = call("basis", "--poly", SAMPLES / "cubic.json", "--index", 3)
    doc = json.loads(out)
    assert code == 0 and len(doc["Z"]) == 6 and len(doc["Z"][0]) == 4
    assert len(doc["tableau"]["J"]) == 6
    write(tmp_path / "v.json", ["1", "0", "0"])
    code, out, _ = call("basis", "--poly", SAMPLES / "cubic.json", "--vector", tmp_path / "v.json")
    assert code == 0 and json.loads(out)["vector"] == ["1", "0", "0"]
    code, _, _ = call("basis", "--poly", SAMPLES / "cubic.json", "--index", 1,
                      "--vector", tmp_path / "v.json")
    assert code == 64


def test_dims_dg_oracle():
    code, out, _ = call("dims", "--poly", SAMPLES / "quartic.json", "--family", "dg",
                        "--eta", 1, "--oracle")
    assert code == 0
    assert json.loads(out)["dimensions"] == [{"eta": 1, "eps": 2, "closed_form": 9, "oracle": 9}]


def test_dims_all_splits():
    code, out, _ = call("dims", "--poly", SAMPLES / "cubic.json", "--oracle")
    rows = json.loads(out)["dimensions"]
    assert code == 0 and len(rows) == 3
    assert all(r["closed_form"] == r["oracle"] for r in rows)


def test_random_deterministic():
    argv = ("random", "--family", "bg", "--seed", 11, "--grade", 5, "--n", 2, "--eta", 2)
    assert call(*argv)[1] == call(*argv)[1]
    assert call(*argv)[1] != call("random", "--family", "bg", "--seed", 12, "--grade", 5,
                                  "--n", 2, "--eta", 2)[1]


def test_build_deterministic():
    argv = ("build", "--family", "g", "--poly", SAMPLES / "cubic.json",
            "--params", SAMPLES / "cubic_g.json")
    assert call(*argv)[1] == call(*argv)[1]


def test_exit_malformed(tmp_path):
    (tmp_path / "bad.json").write_text("[1, 2")
    code, _, err = call("verify", "--pencil", tmp_path / "bad.json",
                        "--poly", SAMPLES / "cubic.json")
    assert code == 64 and "malformed input" in err
    assert call("frobnicate")[0] == 64
    assert call("verify", "--pencil", tmp_path / "missing.json",
                "--poly", SAMPLES / "cubic.json")[0] == 64
    write(tmp_path / "float.json", {"rows": 1, "cols": 1, "grade": 0, "coeffs": [[[0.5]]]})
    assert call("dims", "--poly", tmp_path / "float.json")[0] == 64
    assert call("build", "--family", "g", "--poly", SAMPLES / "cubic.json")[0] == 64


def test_exit_dimension(tmp_path):
    write(tmp_path / "P.json", {"rows": 1, "cols": 1, "grade": 2, "coeffs": [[["1"]]]})
    assert call("dims", "--poly", tmp_path / "P.json")[0] == 65
    code, _, err = call("build", "--family", "g", "--poly", SAMPLES / "quartic.json",
                        "--params", SAMPLES / "cubic_g.json")
    assert code == 65 and "dimension error" in err
    assert call("random", "--family", "dg", "--seed", 1, "--grade", 3, "--n", 2, "--m", 1)[0] == 65


def test_exit_oracle_refusal(tmp_path):
    write_poly(tmp_path / "P.json", rand_poly(0, 3, 5))
    code, _, err = call("dims", "--poly", tmp_path / "P.json", "--oracle")
    assert code == 66 and "oracle refused" in err


def test_bit_limit_env_exit(tmp_path, monkeypatch):
    monkeypatch.setenv("KRON_ANSATZ_BITLIMIT", "20")
    call("build", "--family", "frobenius", "--poly", SAMPLES / "cubic.json",
         "--out", tmp_path / "L.json")
    assert call("verify", "--pencil", tmp_path / "L.json",
                "--poly", SAMPLES / "cubic.json")[0] == 66
