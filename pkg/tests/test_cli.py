"""CLI surface: exit codes, JSON schema, determinism."""

import json
from fractions import Fraction as F

import pytest

from aalg.cli import main
from aalg.documents import parse, to_metric
from aalg.hermitian import HermitianStructure
from aalg.documents import to_algebra, to_complex_structure


B2_GPRIME = """algebra b2 dim 6
d = (f16, f36, 0, f56, 0, 0)
J: f1->f6, f2->f4, f3->f5
g: matrix [[3, 1, 1, 0, 0, 0], [1, 1, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 1], [0, 0, 0, 1, 1, 3]]
"""

S4 = """algebra s4 dim 4
params a = 1
d = (a f14, -1/2 a f24 + f34, -f24 - 1/2 a f34, 0)
J: f1->f4, f2->f3
g: identity
"""

L1_UNIMODULAR = """algebra l1 dim 6
params p = 1/2, q = -1
d = (f16, p f26, p f36, q f46, q f56, 0)
"""

NOT_ALMOST_ABELIAN = """algebra so3R dim 4
d = (f23, -f13, f12, 0)
J: f1->f2, f3->f4
g: identity
"""


@pytest.fixture
def docs(tmp_path):
    paths = {}
    for name, text in (("b2p", B2_GPRIME), ("s4", S4), ("l1u", L1_UNIMODULAR),
                       ("so3", NOT_ALMOST_ABELIAN)):
        p = tmp_path / f"{name}.alg"
        p.write_text(text, encoding="utf-8")
        paths[name] = str(p)
    return paths


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_check_b2_lcb(docs, capsys):
    code, rep = run_json(capsys, ["check", docs["b2p"], "--property", "lcb", "--json"])
    assert code == 0
    assert rep["schema"] == "aalg-report/1"
    assert rep["results"]["lcb"] == {"direct": True, "data": True, "agreement": True}


def test_check_b2_balanced_false(docs, capsys):
    code, rep = run_json(capsys, ["check", docs["b2p"], "--property", "balanced", "--json"])
    assert code == 0
    assert rep["results"]["balanced"]["direct"] is False


def test_check_all_properties(docs, capsys):
    code, rep = run_json(capsys, ["check", docs["s4"], "--json"])
    assert code == 0
    res = rep["results"]
    assert res["skt"]["direct"] and res["lcb"]["direct"]
    assert not res["balanced"]["direct"]
    assert res["vaisman"]["agreement"] is None


def test_check_rejects_non_almost_abelian(docs, capsys):
    code = main(["check", docs["so3"], "--property", "lcb"])
    assert code == 2


def test_input_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.alg"
    p.write_text("algebra x dim 6\nd = (f16", encoding="utf-8")
    assert main(["check", str(p), "--property", "lcb"]) == 1
    assert main(["check", str(tmp_path / "missing.alg"), "--property", "lcb"]) == 1


def test_data_report(docs, capsys):
    code, rep = run_json(capsys, ["data", docs["s4"], "--json"])
    assert code == 0
    assert rep["a"] == "1"
    assert rep["gauge_invariants"]["trace_A"] == "-1"
    assert rep["frame_orthonormal"] is True


def test_rho_b_report(docs, capsys):
    code, rep = run_json(capsys, ["rho-b", docs["s4"], "--json"])
    assert code == 0
    assert rep["closed_form"] == {"1+4": "-3/2"}
    assert rep["curvature_oracle"] == {"1+4": "-3/2"}
    assert rep["residual"] == 0.0
    assert rep["type_1_1"] is True


def test_lchk_id3(capsys):
    code, rep = run_json(capsys, ["lchk", "--matrix", "id3", "--json"])
    assert code == 0
    assert rep["admissible"] is True
    assert rep["a"] == "1"
    assert rep["hyperkahler"] is False


def test_lchk_witness_dump(capsys):
    code, rep = run_json(capsys, ["lchk", "--matrix", "zero3", "--witness", "--json"])
    assert code == 0
    assert rep["hyperkahler"] is True
    assert "witness" in rep and rep["witness"]["lee_form"] == {}


def test_lchk_inline_rejected(capsys):
    code = main(["lchk", "--matrix", "[[1,0,0],[0,1,0],[0,0,2]]", "--json"])
    assert code == 2


def test_lattice_rule(docs, capsys):
    code, rep = run_json(capsys, ["lattice", docs["l1u"], "--rule", "2logk:K=12", "--json"])
    assert code == 0
    assert rep["overall"] == "NONE_IN_RANGE"
    assert len(rep["points"]) == 11
    assert all(pt["residual_vs_inv_k"] <= 1e-9 for pt in rep["points"])


def test_lattice_grid(docs, capsys):
    code, rep = run_json(capsys, ["lattice", docs["l1u"], "--grid", "0.5:2:4", "--json"])
    assert code == 0
    assert [pt["t"] for pt in rep["points"]] == [0.5, 1.0, 1.5, 2.0]


def test_catalog_verify_entry(capsys):
    code, rep = run_json(capsys, ["catalog", "verify", "--entry", "l14",
                                  "--samples", "3", "--json"])
    assert code == 0
    assert rep["ok"] is True
    assert rep["entries"][0]["entry"] == "l14"


def test_catalog_unknown_entry(capsys):
    assert main(["catalog", "verify", "--entry", "nope", "--json"]) == 1


def test_skt_to_lcb_roundtrip(docs, capsys):
    code = main(["skt-to-lcb", docs["s4"]])
    out = capsys.readouterr().out
    assert code == 0
    doc = parse(out)
    L = to_algebra(doc)
    J = to_complex_structure(doc)
    g = to_metric(doc)
    H = HermitianStructure(L, J, g)
    assert H.is_lcb_direct()


def test_json_determinism(docs, capsys):
    code1 = main(["check", docs["b2p"], "--property", "lcb", "--json"])
    out1 = capsys.readouterr().out
    code2 = main(["check", docs["b2p"], "--property", "lcb", "--json"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0 and out1 == out2
