from __future__ import annotations

import json

from cleanmat.cli import main

PROD = '{"type":"product","factors":[{"type":"zloc","p":2},{"type":"zloc","p":2}]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_paper_example(capsys):
    code, out, _ = run(
        capsys,
        "decide", "--ring", PROD, "--poly", "[[2,3],[3,1],[1,1]]", "--companion",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"]["verdict"] == "yes"
    assert doc["decision"]["route"] == "gSRC"
    assert len(doc["decision"]["factorization"]["blocks"]) == 2


def test_decide_negative_companion(capsys):
    code, out, _ = run(
        capsys,
        "decide", "--ring", '{"type":"zloc","p":2}', "--poly", "[2,-1,1]", "--companion",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"]["verdict"] == "no"
    assert doc["decision"]["route"] == "companion_negation"


def test_audit_document(capsys):
    code, out, _ = run(capsys, "audit", "--ring", '{"type":"zmod","n":6}', "--degree", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["instances"] == 36
    assert doc["report"]["disagreements"] == []
    assert "wall_time_s" not in doc["report"]


def test_byte_determinism(capsys):
    args = ["decide", "--ring", PROD, "--poly", "[[2,3],[3,1],[1,1]]", "--companion"]
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    _, z1, _ = run(capsys, "z5-example")
    _, z2, _ = run(capsys, "z5-example")
    assert z1 == z2


def test_exit_codes(capsys):
    # unknown verdict -> 2 (non-companion matrix over an infinite ring)
    from cleanmat.matrices import random_with_charpoly
    from cleanmat.polys import Poly
    from cleanmat.rings import build_ring
    from cleanmat.serialize import matrix_to_json

    Z2 = build_ring({"type": "zloc", "p": 2})
    A = random_with_charpoly(Poly.from_ints(Z2, [2, -1, 1]), seed=3)
    code, out, _ = run(
        capsys,
        "decide", "--ring", '{"type":"zloc","p":2}',
        "--matrix", json.dumps(matrix_to_json(A)),
    )
    assert code == 2
    assert json.loads(out)["decision"]["verdict"] == "unknown"

    # usage error -> 1
    code, _, err = run(capsys, "decide", "--ring", '{"type":"zmod","n":6}')
    assert code == 1 and "error" in err

    # malformed ring -> 1
    code, _, err = run(capsys, "ring", "--ring", '{"type":"nope"}')
    assert code == 1

    # incomplete factor search -> 2
    code, out, _ = run(
        capsys,
        "factor", "--ring", '{"type":"zloc","p":2}', "--poly", "[2,1,0,0,1]",
        "--mode", "src",
    )
    assert code == 2
    assert json.loads(out)["result"]["status"] == "incomplete"


def test_verify_roundtrip(capsys, tmp_path):
    args = ["decide", "--ring", PROD, "--poly", "[[2,3],[3,1],[1,1]]", "--companion"]
    _, out, _ = run(capsys, *args)
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(out)
    code, vout, _ = run(capsys, "decide", "--ring", PROD, "--verify", f"@{doc_path}")
    assert code == 0
    assert json.loads(vout)["valid"] is True

    # tamper with the certificate: E loses idempotency
    doc = json.loads(out)
    doc["decision"]["certificate"]["E"][0][0] = ["1/1", "1/1"]
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(doc))
    code, vout, _ = run(capsys, "decide", "--ring", PROD, "--verify", f"@{bad_path}")
    assert code == 3
    assert json.loads(vout)["valid"] is False


def test_verify_roundtrip_pi_regular(capsys, tmp_path):
    args = ["pi-regular", "--ring", '{"type":"zmod","n":6}', "--poly", "[2,3,1]", "--companion"]
    _, out, _ = run(capsys, *args)
    p = tmp_path / "pi.json"
    p.write_text(out)
    code, vout, _ = run(
        capsys, "pi-regular", "--ring", '{"type":"zmod","n":6}', "--verify", f"@{p}"
    )
    assert code == 0 and json.loads(vout)["valid"] is True


def test_factor_and_ring_documents(capsys):
    code, out, _ = run(
        capsys, "factor", "--ring", PROD, "--poly", "[[2,3],[3,1],[1,1]]", "--mode", "sr"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["status"] == "absent"
    degrees = doc["result"]["transcript"]["stalks"][0]["degrees"]
    assert set(degrees) == {"0", "1", "2"}

    code, out, _ = run(capsys, "ring", "--ring", '{"type":"zmod","n":12}')
    doc = json.loads(out)
    assert doc["stalks"] == ["Z/4", "Z/3"] and doc["size"] == 12


def test_jclean_and_triangular_and_z5(capsys):
    code, out, _ = run(capsys, "jclean", "--ring", '{"type":"zloc","p":2}')
    assert code == 0
    assert json.loads(out)["decision"]["verdict"] == "no"

    code, out, _ = run(
        capsys, "triangular", "--ring", '{"type":"zmod","n":4}', "--degree", "2"
    )
    assert code == 0
    assert json.loads(out)["report"]["agreements"] == 64

    code, out, _ = run(capsys, "z5-example")
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["all_verifications_passed"]
    assert len(rep["discrepancies"]) == 3


def test_ring_level_decide_cli(capsys):
    code, out, _ = run(
        capsys, "decide", "--ring", '{"type":"zloc","p":2}', "--degree", "2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"]["verdict"] == "no"
    assert doc["decision"]["refutation"]["witness_h"] == [["2/1"], ["-1/1"], ["1/1"]]
