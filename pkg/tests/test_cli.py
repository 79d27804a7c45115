import json

import pytest

from baxops.cli import main
from baxops.convolution import end_algebra
from baxops.examples import example_documents
from baxops.formats import dumps, operator_to_json
from baxops.linalg import LinearMap
from baxops.models import matrix_algebra

M2 = "example:m2_delta0"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json", "--no-timings")
    return code, json.loads(out) if out else None, err


@pytest.fixture
def identity_file(tmp_path):
    basis = end_algebra(matrix_algebra(2)).basis
    p = tmp_path / "identity.json"
    p.write_text(dumps(operator_to_json(LinearMap.identity(16), basis)), encoding="utf-8")
    return str(p)


# ---------------------------------------------------------------- verify

def test_verify_m2_delta0(capsys):
    code, doc, _ = run_json(capsys, "verify", "--algebra", M2, "--delta", "Delta0", "--kind", "Eps")
    assert code == 0 and doc["passed"]
    assert [c["status"] for c in doc["checks"]] == ["pass", "pass"]


def test_verify_corrupted_constant(capsys, tmp_path):
    doc = example_documents()["m2_delta0.json"]
    entry = next(e for e in doc["product"] if e["left"] == "E12" and e["right"] == "E21")
    entry["result"] = [{"basis": "E11", "coeff": "2"}]
    p = tmp_path / "bad.json"
    p.write_text(dumps(doc), encoding="utf-8")
    code, rep, _ = run_json(capsys, "verify", "--algebra", str(p), "--delta", "Delta0", "--kind", "Eps")
    assert code == 1 and not rep["passed"]
    assoc = rep["checks"][0]
    assert assoc["status"] == "fail"
    assert assoc["failures"][0]["at"] == ["E12", "E21", "E12"]


def test_verify_with_counit(capsys):
    code, doc, _ = run_json(capsys, "verify", "--algebra", "example:delta_lambda", "--delta", "DeltaLambda",
                            "--kind", "EpsR", "--counit", "example:delta_lambda_counit")
    assert code == 0 and len(doc["checks"]) == 3


def test_verify_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--algebra", str(tmp_path / "none.json"), "--delta", "D", "--kind", "Eps")
    assert code == 2 and "cannot read" in err and out == ""


def test_verify_bad_inputs(capsys):
    assert run(capsys, "verify", "--algebra", M2, "--delta", "Nope", "--kind", "Eps")[0] == 2
    assert run(capsys, "verify", "--algebra", M2, "--delta", "Delta0", "--kind", "Weird")[0] == 2
    assert run(capsys, "verify", "--algebra", "example:nothing", "--delta", "D", "--kind", "Eps")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


# ---------------------------------------------------------------- baxter

def test_baxter_beta_full(capsys):
    code, doc, _ = run_json(capsys, "baxter", "--algebra", M2, "--delta", "Delta0", "--operator", "beta")
    assert code == 0 and doc["checks"][0]["checked"] == 256


def test_baxter_identity(capsys, identity_file):
    base = ("baxter", "--algebra", M2, "--delta", "Delta0", "--operator", identity_file)
    assert run(capsys, *base, "--kind", "full")[0] == 1
    assert run(capsys, *base, "--kind", "right")[0] == 0
    assert run(capsys, *base, "--kind", "left")[0] == 0


# ---------------------------------------------------------------- derive

def test_derive_quadri(capsys):
    code, doc, _ = run_json(capsys, "derive", "quadri", "--algebra", M2, "--delta", "Delta0")
    assert code == 0
    ids = [c["id"] for c in doc["checks"]]
    assert "relations[quadri]" in ids and "cluster[quadri]" in ids


def test_derive_octo3_degenerate(capsys):
    code, doc, _ = run_json(capsys, "derive", "octo3", "--algebra", M2, "--delta", "Delta0", "--delta2", "Delta0x2")
    assert code == 0
    assert any(n.startswith("DEGENERATE") for n in doc["notes"])


def test_derive_M_non_commuting(capsys):
    code, out, _ = run(capsys, "derive", "M", "--algebra", M2, "--delta", "Delta0", "--delta2", "Delta1")
    assert code == 1
    assert "[FAIL] commute[zeta,theta]" in out


def test_derive_M_force_still_fails(capsys):
    code, doc, _ = run_json(capsys, "derive", "M", "--algebra", M2, "--delta", "Delta0", "--delta2", "Delta1",
                            "--force")
    assert code == 1 and not doc["passed"]


@pytest.mark.parametrize("argv", [
    ("M", "--algebra", "example:m2_rr_pair", "--delta", "DA", "--delta2", "DX"),
    ("M2", "--algebra", "example:m2_lr_pair", "--delta", "DL", "--delta2", "DR"),
    ("M2", "--algebra", M2, "--delta", "Casimir", "--delta2", "Casimir"),
    ("dialgebra", "--algebra", "example:delta_lambda", "--delta", "DeltaLambda", "--delta2", "DeltaLambda"),
    ("trialgebra", "--algebra", "example:delta_lambda", "--delta", "DeltaLambda", "--delta2", "DeltaLambda",
     "--delta3", "DeltaLambda"),
    ("ladip", "--algebra", M2, "--delta", "DeltaAB1"),
    ("tensor-octo",),
])
def test_derive_passing_structures(capsys, argv):
    code, doc, _ = run_json(capsys, "derive", *argv)
    assert code == 0, [c["id"] for c in doc["checks"] if c["status"] == "fail"]


def test_derive_dump_ops(capsys):
    code, doc, _ = run_json(capsys, "derive", "quadri", "--algebra", M2, "--delta", "Delta0", "--dump-ops")
    assert code == 0 and sorted(doc["results"]["ops"]) == ["ne", "nw", "se", "sw"]


def test_derive_missing_inputs(capsys):
    assert run(capsys, "derive", "quadri")[0] == 2
    assert run(capsys, "derive", "M", "--algebra", M2, "--delta", "Delta0")[0] == 2


# ---------------------------------------------------------------- operad

def test_operad_al(capsys):
    code, out, _ = run(capsys, "operad", "dims", "--preset", "AL", "--max-arity", "4")
    assert code == 0 and "sequence: 1 2 5 14" in out


def test_operad_octo(capsys):
    code, doc, _ = run_json(capsys, "operad", "dims", "--preset", "octo", "--max-arity", "3")
    assert code == 0 and doc["results"]["sequence"] == "1 8 101"


def test_operad_file(capsys):
    code, doc, _ = run_json(capsys, "operad", "dims", "--file", "example:al_presentation", "--max-arity", "4")
    assert code == 0 and doc["results"]["dims"] == [1, 2, 5, 14]


def test_operad_octo_refusal(capsys):
    code, out, err = run(capsys, "operad", "dims", "--preset", "octo", "--max-arity", "9")
    assert code == 2 and "too large" in err


def test_operad_bad_preset(capsys):
    assert run(capsys, "operad", "dims", "--preset", "nope", "--max-arity", "3")[0] == 2


# ---------------------------------------------------------------- graph

def test_graph_research(capsys):
    code, doc, _ = run_json(capsys, "graph", "research", "--graph", "example:chain6", "--path", "1,2,3,4")
    assert code == 0
    assert doc["results"]["research"] == {"1-2-3-4⊗e5": "7"}


def test_graph_dynamics(capsys):
    code, doc, _ = run_json(capsys, "graph", "dynamics", "--subst", "example:subst_ss", "--start", "s",
                            "--steps", "2", "--trunc", "4")
    assert code == 0 and doc["results"]["state"] == {"sss": "1"}


def test_graph_verify(capsys):
    code, doc, _ = run_json(capsys, "graph", "verify", "--graph", "example:chain6", "--trunc", "4", "--delta-m")
    assert code == 0 and doc["passed"]


def test_graph_non_injective(capsys):
    code, _, err = run(capsys, "graph", "verify", "--graph", "example:fork_graph", "--delta-m")
    assert code == 2 and "injective" in err


# ---------------------------------------------------------------- reports

def test_reports_byte_identical(capsys, tmp_path):
    argv = ["derive", "quadri", "--algebra", M2, "--delta", "Delta0", "--no-timings"]
    outs = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        assert main(argv + ["--report", str(p)]) == 0
        outs.append(p.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]
    assert b"timings" not in outs[0]


def test_timings_segregated(capsys):
    code, out, _ = run(capsys, "baxter", "--algebra", M2, "--delta", "Delta0", "--json")
    doc = json.loads(out)
    assert "timings" in doc and all("time" not in json.dumps(c) for c in doc["checks"])
