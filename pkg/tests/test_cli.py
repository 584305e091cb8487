import json
import os
import pathlib
import subprocess
import sys

import pytest

from conftest import DATA
from infranil.cli import main

GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"

GOLDEN_CASES = {
    "nielsen": ["nielsen", "{input}", "--max-n", "6"],
    "classes1": ["classes", "{input}", "--level", "1"],
    "classes2": ["classes", "{input}", "--level", "2"],
    "nf": ["nf", "{input}", "--max-n", "6"],
    "classify": ["classify", "{input}"],
    "zeta": ["zeta", "{input}", "--terms", "8", "--which", "minimal"],
    "boost_dot": ["boost-graph", "{input}", "--n", "6", "--format", "dot"],
    "boost_json": ["boost-graph", "{input}", "--n", "6", "--format", "json"],
    "nf_json": ["nf", "{input}", "--max-n", "6", "--json"],
}


def run(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("example", ["klein3", "z3", "z6"])
@pytest.mark.parametrize("case", sorted(GOLDEN_CASES))
def test_golden(example, case, capsys):
    args = [a.format(input=DATA / f"{example}.json") for a in GOLDEN_CASES[case]]
    code, out, _ = run(args, capsys)
    assert code == 0
    path = GOLDEN / f"{example}__{case}.txt"
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()


def test_nf_klein_rows(capsys):
    code, out, _ = run(["nf", DATA / "klein3.json", "--max-n", "4", "--json"], capsys)
    assert code == 0
    rows = [(r["n"], r["N"], r["IIB"], r["NF"], r["NP"]) for r in json.loads(out)["rows"]]
    assert rows == [(1, 2, 0, 2, 2), (2, 8, 2, 10, 8), (3, 26, 0, 26, 24), (4, 80, 10, 90, 80)]


def test_validate_ok(capsys):
    code, out, _ = run(["validate", DATA / "klein3.json"], capsys)
    assert code == 0 and out.strip().endswith("valid")


def test_validate_failure_exit_code(tmp_path, capsys):
    doc = json.loads((DATA / "klein3.json").read_text())
    doc["map"] = {"translation": ["0", "0"], "linear": [["2", "0"], ["0", "1"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(["validate", path, "--json"], capsys)
    assert code == 1
    payload = json.loads(out)
    assert payload["valid"] is False
    assert payload["violations"][0]["residual"] == ["1/2", "0"]


def test_zeta_probe(capsys):
    code, out, _ = run(["zeta", DATA / "torus2.json", "--terms", "3", "--which", "nielsen",
                        "--probe-rational", "1"], capsys)
    assert code == 0
    assert out.splitlines() == ["nielsen zeta coefficients: 1, 1, 2, 4",
                                "(1 - z)/(1 - 2z), consistent to order 3"]


def test_zeta_probe_too_short(capsys):
    code, _, err = run(["zeta", DATA / "torus2.json", "--terms", "3", "--probe-rational", "2"], capsys)
    assert code == 1 and "order" in err


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", DATA / "klein3.json", "--n", "1", "--json"], capsys)
    payload = json.loads(out)
    assert code == 0
    assert payload["enumerated"] == payload["predicted_N"] == 2
    assert payload["infinite_classes"] == ["A"]
    code, out, _ = run(["oracle", DATA / "torus2.json", "--n", "3", "--window", "all", "--json"], capsys)
    payload = json.loads(out)
    assert payload["torus_count"] == 7 and payload["agree"]
    code, out, _ = run(["oracle", DATA / "torus_identity.json", "--json"], capsys)
    assert json.loads(out)["torus_count"] == "infinite"


def test_boost_graph_to_file(tmp_path, capsys):
    out_path = tmp_path / "g.dot"
    code, out, _ = run(["boost-graph", DATA / "z3.json", "--n", "6", "--out", out_path], capsys)
    assert code == 0 and out == ""
    assert out_path.read_text().startswith('digraph "boost_6"')


def test_missing_file(capsys):
    code, out, _ = run(["nf", "does-not-exist.json", "--json"], capsys)
    assert code == 1
    assert json.loads(out)["error"]["type"] == "io"


def test_unknown_flag(capsys):
    code, out, _ = run(["nf", DATA / "klein3.json", "--bogus", "--json"], capsys)
    assert code == 1
    assert json.loads(out)["error"]["type"] == "usage"


def test_bad_argument_value(capsys):
    code, _, err = run(["nf", DATA / "klein3.json", "--max-n", "0"], capsys)
    assert code == 1 and "positive" in err


def test_validation_error_on_load(tmp_path, capsys):
    path = tmp_path / "sing.json"
    doc = json.loads((DATA / "klein_circle_singular.json").read_text())
    del doc["fstar_lattice_images"]
    path.write_text(json.dumps(doc))
    code, out, _ = run(["nf", path, "--json"], capsys)
    assert code == 1
    assert "f_# data required" in json.loads(out)["error"]["message"]


def test_structural_error_exit_code(monkeypatch, capsys):
    from infranil import cli
    from infranil.errors import StructuralInvariantError

    def boom(args, g, f):
        raise StructuralInvariantError("structural invariant violated")

    monkeypatch.setitem(cli.COMMANDS, "nf", boom)
    code, _, err = run(["nf", DATA / "klein3.json"], capsys)
    assert code == 2 and "structural" in err


def test_reruns_are_byte_identical():
    cmd = [sys.executable, "-m", "infranil", "nf", str(DATA / "z6.json"), "--max-n", "6"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert first == second and "235570" in first
