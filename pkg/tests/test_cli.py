import io
import json
import subprocess
import sys

import pytest

from biquotients.cli import run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def as_json(*argv):
    code, text = invoke(*argv, "--format", "json")
    return code, json.loads(text)


def test_catalog_json():
    code, doc = as_json("catalog", "--max-rank", "3")
    assert code == 0 and doc["ok"] and doc["command"] == "catalog"
    groups = {r["group"]: r for r in doc["records"]}
    assert groups["SU(2)"]["spheres"] == [3]
    assert groups["G2"]["dim"] == 14
    assert any(r["family"] == "coincidence" for r in doc["records"])


def test_catalog_table():
    code, text = invoke("catalog", "--max-rank", "2")
    assert code == 0
    assert "SU(3)" in text and text.rstrip().endswith("catalog: PASS")


def test_match():
    code, doc = as_json("match", "--max-rank", "4")
    assert code == 0
    labels = {(r["g"], r["h"], r["sphere_dim"]) for r in doc["records"]}
    assert ("G2", "SU(2)", 11) in labels
    _, trivial = as_json("match", "--max-rank", "4", "--include-trivial-h")
    assert len(trivial["records"]) > len(doc["records"])


@pytest.mark.parametrize("argv, code", [
    (["--g", "3,5", "--h", "3", "--sphere", "5"], 0),
    (["--g", "3,5", "--h", "3", "--sphere", "7"], 1),
    (["--g", "3,7", "--h", "3,1", "--truncated", "2", "3"], 0),
    (["--g", "3,4", "--h", "3", "--sphere", "5"], 2),
])
def test_balance(argv, code):
    assert invoke("balance", *argv)[0] == code


def test_cohomology_spaces():
    code, doc = as_json("cohomology", "--space", "unit-tangent", "--n", "3")
    assert code == 0
    tors = {r["degree"]: r["torsion"] for r in doc["records"] if r.get("kind") == "H^*"}
    assert tors[6] == [2]
    for space in ("circle-quotient", "quaternionic-quotient", "g2-su2"):
        assert invoke("cohomology", "--space", space, "--n", "2")[0] == 0


def test_allow_n1():
    assert invoke("cohomology", "--space", "unit-tangent", "--n", "1")[0] == 2
    code, doc = as_json("cohomology", "--space", "unit-tangent", "--n", "1", "--allow-n1")
    assert code == 0
    # T^1 S^2 is RP^3
    groups = {r["degree"]: (r["free_rank"], r["torsion"]) for r in doc["records"]}
    assert groups == {0: (1, []), 2: (0, [2]), 3: (1, [])}


def test_g2_homology():
    code, doc = as_json("cohomology", "--space", "g2-su2")
    hom = {r["degree"]: (r["free_rank"], r["torsion"]) for r in doc["records"] if r.get("kind") == "H_*"}
    assert hom == {0: (1, []), 5: (0, [2]), 11: (1, [])}


def test_pontrjagin_and_distinguish():
    code, doc = as_json("pontrjagin", "--n", "4")
    assert code == 0
    assert [r["p1"] for r in doc["records"]] == [8, 5]
    code, doc = as_json("distinguish", "--n", "3")
    rec = doc["records"][0]
    assert code == 0 and (rec["order_M"], rec["order_N"]) == (6, 3)


@pytest.mark.parametrize("argv", [["distinguish", "--n", "1"], ["distinguish", "--n", "x"],
                                  ["distinguish"], ["nope"], ["verify-tables", "--n-max", "1"]])
def test_usage_errors(argv):
    assert invoke(*argv)[0] == 2


def test_weights():
    code, doc = as_json("weights", "--action", "normal-geodesic")
    assert code == 0 and doc["records"][0]["weights"] == {"0": 1, "2": 1}
    code, doc = as_json("weights", "--action", "diagonal", "--n", "3")
    assert doc["records"][0]["weights"] == {"0": 2, "1": 6}
    # weight 2 of the normal action is out of reach with max weight 1
    assert invoke("weights", "--action", "normal-geodesic", "--max-weight", "1")[0] == 2


def test_verify_tables_pass_and_deterministic():
    code, first = invoke("verify-tables", "--n-max", "4", "--format", "json")
    assert code == 0
    _, second = invoke("verify-tables", "--n-max", "4", "--format", "json")
    assert first == second
    doc = json.loads(first)
    assert doc["ok"] and all(r["passed"] for r in doc["records"])


def test_verify_tables_detects_bad_data(tmp_path, capsys):
    from biquotients.enumeration import load_tables

    tables = load_tables()
    tables["g2_su2_homology"] = {"0": "Z", "5": "Z3", "11": "Z"}
    tables["odd_sphere_pairs"] = tables["odd_sphere_pairs"][1:]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(tables))
    code, text = invoke("verify-tables", "--n-max", "3", "--tables", str(path))
    assert code == 1 and "FAIL" in text
    err = capsys.readouterr().err
    assert "G2//SU(2)" in err


def test_catalog_override(tmp_path):
    path = tmp_path / "cat.txt"
    path.write_text("# small\nA 1\nA 2\nG2\n")
    code, doc = as_json("catalog", "--catalog", str(path))
    assert code == 0
    assert [r["group"] for r in doc["records"]] == ["SU(2)", "SU(3)", "G2"]
    code, doc = as_json("match", "--catalog", str(path))
    assert {(r["g"], r["h"]) for r in doc["records"]} == {("SU(3)", "SU(2)"), ("G2", "SU(2)")}
    bad = tmp_path / "bad.txt"
    bad.write_text("A 1\nQ 3\n")
    assert invoke("catalog", "--catalog", str(bad))[0] == 2
    assert invoke("catalog", "--catalog", str(tmp_path / "missing.txt"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "biquotients", "distinguish", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "not homeomorphic" in proc.stdout
