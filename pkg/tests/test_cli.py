import io
import json
import subprocess
import sys

import pytest

from heisvoa.cli import main


def run(argv, stdin=None, capsys=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(stdin)))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


PAIR = {"A": [["1/2", "1/2"], ["1/2", "1/2"]], "B": ["1/2", "1/2"], "h": ["1", "0"]}


def test_check(capsys, monkeypatch):
    code, out, _ = run(["check", "--fock"], PAIR, capsys, monkeypatch)
    assert code == 0 and json.loads(out) == {"semiconformal": True, "fock": True}
    bad = dict(PAIR, B=["1", "0"])
    code, out, _ = run(["check"], bad, capsys, monkeypatch)
    assert code == 1 and json.loads(out) == {"semiconformal": False}


def test_classify_and_labels(capsys, monkeypatch):
    doc = {"A": [["1/2", "1/2", "0"], ["1/2", "1/2", "0"], ["0", "0", "0"]], "B": ["1/2", "1/2", "0"], "h": ["1", "0", "0"]}
    code, out, _ = run(["classify"], doc, capsys, monkeypatch)
    assert json.loads(out) == {"family": "I3", "k": 1, "y": "1/2"}
    code, out, _ = run(["labels", "--h", "1,i"], None, capsys, monkeypatch)
    assert [f["family"] for f in json.loads(out)] == ["J1", "J2", "J3"]


def test_commutant_complement(capsys, monkeypatch):
    doc = {"A": [["1", "0"], ["0", "0"]], "B": ["1", "0"], "h": ["1", "0"]}
    _, out, _ = run(["commutant"], doc, capsys, monkeypatch)
    assert json.loads(out) == {"commutant": [["0", "1"]], "double_commutant": [["1", "0"]]}
    _, out, _ = run(["complement"], doc, capsys, monkeypatch)
    assert json.loads(out) == {"A": [["0", "0"], ["0", "1"]], "B": ["0", "0"], "h": ["1", "0"]}


def test_chain_and_poset(capsys, monkeypatch):
    _, out, _ = run(["chain", "--h", "1,2,0"], None, capsys, monkeypatch)
    chain = json.loads(out)
    assert [p["B"] for p in chain] == [["0", "0", "0"], ["1", "0", "0"], ["1", "2", "0"], ["1", "2", "0"]]
    _, out, _ = run(["poset", "--format", "dot"], {"pairs": chain[::-1]}, capsys, monkeypatch)
    assert out.count("->") == 3
    _, out2, _ = run(["chain", "--h", "1,2,0", "--format", "dot"], None, capsys, monkeypatch)
    assert out == out2
    _, out, _ = run(["chain", "--dim", "3", "--seed", "4"], None, capsys, monkeypatch)
    _, again, _ = run(["chain", "--dim", "3", "--seed", "4"], None, capsys, monkeypatch)
    assert out == again and len(json.loads(out)) == 4


def test_poset_invalid_index(capsys, monkeypatch):
    bad = {"A": [["2", "0"], ["0", "0"]], "B": ["2", "0"], "h": ["1", "0"]}
    code, _, err = run(["poset"], [PAIR, bad], capsys, monkeypatch)
    assert code == 1 and json.loads(err)["error"] == "InvalidPair"


def test_charge_moduli_aut(capsys, monkeypatch):
    _, out, _ = run(["charge", "--h", "1,2,0"], None, capsys, monkeypatch)
    assert json.loads(out) == {"charge": "-57", "fock": "-57"}
    code, out, _ = run(["charge", "-"], {"A": [["1", "0"], ["0", "0"]], "B": ["1", "0"], "h": ["1", "0"]}, capsys, monkeypatch)
    assert json.loads(out)["charge"] == "-11"
    _, out, _ = run(["moduli", "--h", "1,2,0"], None, capsys, monkeypatch)
    assert json.loads(out) == {"class": "value", "s": "5"}
    _, out, _ = run(["moduli", "--h", "0,0"], None, capsys, monkeypatch)
    assert json.loads(out) == {"class": "zero"}
    code, out, _ = run(["aut-check"], {"Q": [["1", "0"], ["0", "-1"]], "h": ["1", "0"]}, capsys, monkeypatch)
    assert code == 0 and json.loads(out) == {"automorphism": True}
    code, _, _ = run(["aut-check", "--h", "1,0"], {"Q": [["0", "1"], ["1", "0"]]}, capsys, monkeypatch)
    assert code == 1


def test_fock_apply(capsys, monkeypatch):
    doc = {"W": {"S": [["1"]], "b": ["0"]}, "m": 0, "v": [{"monomial": [[1, 1]], "coefficient": "1"}]}
    _, out, _ = run(["fock-apply"], doc, capsys, monkeypatch)
    assert json.loads(out) == [{"monomial": [[1, 1]], "coefficient": "1"}]
    omega = [{"monomial": [[1, 1], [1, 1]], "coefficient": "1/2"}, {"monomial": [[2, 1], [2, 1]], "coefficient": "1/2"}, {"monomial": [[1, 2]], "coefficient": "1"}]
    doc = {"W": {"S": [["1", "0"], ["0", "1"]], "b": ["1", "0"]}, "m": 2, "v": omega}
    _, out, _ = run(["fock-apply"], doc, capsys, monkeypatch)
    assert json.loads(out) == [{"monomial": [], "coefficient": "-5"}]
    doc = {"W": {"S": [["1"]], "b": ["0"]}, "m": 5, "v": [{"monomial": [[1, 1], [1, 1]], "coefficient": "1"}]}
    _, out, _ = run(["fock-apply"], doc, capsys, monkeypatch)
    assert json.loads(out) == []


def test_witness(capsys, monkeypatch):
    line = lambda v: {"A": [["0", "0", "0"], ["0", *v[0]], ["0", *v[1]]], "B": ["0", "0", "0"], "h": ["1", "0", "0"]}
    p1 = line([["1", "0"], ["0", "0"]])
    p2 = line([["1/2", "1/2"], ["1/2", "1/2"]])
    code, out, _ = run(["witness"], {"p1": p1, "p2": p2}, capsys, monkeypatch)
    doc = json.loads(out)
    assert code == 0 and max(doc["residuals"].values()) <= 1e-9
    other = {"A": [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]], "B": ["1", "0", "0"], "h": ["1", "0", "0"]}
    code, _, err = run(["witness"], {"p1": p1, "p2": other}, capsys, monkeypatch)
    assert code == 1 and json.loads(err)["error"] == "DifferentOrbits"


def test_approx_backend_flag(capsys, monkeypatch):
    code, out, _ = run(["check", "--backend", "approx", "--epsilon", "1e-6"], PAIR, capsys, monkeypatch)
    assert code == 0
    near = dict(PAIR, B=["1/2", "500001/1000000"])
    code, _, _ = run(["check", "--backend", "approx", "--epsilon", "1e-3"], near, capsys, monkeypatch)
    assert code == 0
    code, _, _ = run(["check"], near, capsys, monkeypatch)
    assert code == 1


def test_verify_schema_and_determinism(capsys, monkeypatch):
    code, out, err = run(["verify", "--cases", "4", "--seed", "3"], None, capsys, monkeypatch)
    assert code == 0
    report = json.loads(out)
    assert all(set(r) == {"property", "cases", "failures"} for r in report)
    assert "properties passed" in err
    _, again, _ = run(["verify", "--cases", "4", "--seed", "3"], None, capsys, monkeypatch)
    assert again == out


def test_verify_mutation_is_detected(capsys, monkeypatch):
    code, out, _ = run(
        ["verify", "--only", "semiconformal.fock_equivalence", "--cases", "40", "--mutate", "sign-of-linear-term"],
        None,
        capsys,
        monkeypatch,
    )
    report = json.loads(out)
    assert code == 1
    failure = report[0]["failures"][0]
    assert set(failure) == {"input", "expected", "got"}


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heisvoa", "moduli", "--h", "1,i"], capture_output=True, text=True, check=True
    )
    assert json.loads(proc.stdout) == {"class": "isotropic"}
