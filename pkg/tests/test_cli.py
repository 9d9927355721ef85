import csv
import io
import json

import pytest

from poset_operads.cli import run

TRIV2 = '{"size": 2, "covers": []}'
V = '{"size": 3, "covers": [[1, 3], [2, 3]]}'
THIN = '{"size": 6, "covers": [[3, 4], [3, 5], [5, 6]]}'
ALG = '{"size": 5, "covers": [[1, 2], [1, 3], [3, 4]]}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_dims():
    code, out, _ = call("dims", "--poset", TRIV2, "--max-arity", "6")
    assert code == 0 and out.strip() == "1 2 6 22 90 394"


def test_dims_json_oracle():
    code, out, _ = call("dims", "--poset", V, "--max-arity", "4", "--method", "oracle", "--json")
    assert code == 0
    assert json.loads(out)["dims"][:2] == [1, 3]


def test_hilbert_refuses_non_forest():
    code, _, err = call("hilbert", "--poset", V)
    assert code == 2 and "error" in err


def test_check_json():
    code, out, _ = call("check", "--poset", V, "--json", "--max-arity", "4")
    assert code == 0
    doc = json.loads(out)
    assert isinstance(doc, dict) and doc


def test_confluence_witness():
    code, out, _ = call("confluence", "--poset", V)
    assert code == 0
    assert "confluent False" in out and "peak" in out


def test_relations_dimension():
    code, out, _ = call("relations", "--poset", THIN, "--kind", "dual")
    assert code == 0
    assert out.strip().endswith(f"dimension {2 * 36 + 18 - 40}")


def test_dual_poset():
    code, out, _ = call("dual-poset", "--poset", THIN, "--json")
    assert code == 0
    assert json.loads(out)["dual"]["covers"] == [[1, 2], [2, 3], [2, 4], [4, 5], [4, 6]]


def test_dual_poset_standardize():
    scrambled = '{"size": 2, "covers": [[2, 1]]}'
    assert call("dual-poset", "--poset", scrambled)[0] == 2
    assert call("dual-poset", "--poset", scrambled, "--standardize")[0] == 0


def test_verify_iso():
    code, out, _ = call("verify-iso", "--poset", THIN)
    assert code == 0
    assert "star3 = bar1 + bar2 + bar3 + bar4 + bar5 + bar6" in out and out.strip().endswith("pass")


def test_compose():
    poset = '{"size": 6, "covers": [[1, 2], [1, 3], [4, 5], [5, 6]]}'
    code, out, _ = call("compose", "--poset", poset, "--left", "(1 _ (4 _ _))", "--index", "1", "--right", "(2 (3 _ _) (3 _ _))")
    assert code == 0 and out.strip() == "(1 _ _ _ _ (4 _ _))"


def test_compose_rejects_non_alternating():
    poset = '{"size": 2, "covers": [[1, 2]]}'
    code, _, _ = call("compose", "--poset", poset, "--left", "(1 _ (2 _ _))", "--index", "1", "--right", "(1 _ _)")
    assert code == 2


def test_algebra_free_and_antichain():
    code, out, _ = call("algebra", "--poset", ALG, "--op", "1", "--left", "(2 _ _ (4 _ _))", "--right", "(3 (2 _ _) (5 _ _))")
    assert code == 0 and out.strip() == "(1 _ _ _ _ _ _ (5 _ _))"
    code, out, _ = call("algebra", "--poset", V, "--antichain", "--op", "3", "--left", "1", "--right", "")
    assert code == 0 and out.strip() == "x1"
    code, out, _ = call("algebra", "--poset", V, "--antichain", "--op", "1", "--left", "", "--right", "2")
    assert code == 0 and out.strip() == "x1 x2"


def test_sweep_csv():
    code, out, _ = call("sweep", "--size", "3", "--family", "thin-forest", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["poset_id", "n", "dim", "dim_dual_check", "confluent", "iso_ok"]
    assert len(rows) == 4 and all(r["iso_ok"] == "True" for r in rows)


def test_sweep_all_family():
    code, out, _ = call("sweep", "--size", "3", "--family", "all", "--arity", "3")
    assert code == 0 and out.strip().endswith("5 posets, all checks pass")


@pytest.mark.parametrize(
    "argv",
    [
        ["dims", "--poset", '{"size": 2, "covers": [[1, 2], [2, 1]]}'],
        ["dims", "--poset", "{not json"],
        ["dims", "--poset", "/nonexistent/poset.json"],
        ["compose", "--poset", TRIV2, "--left", "(1 _", "--index", "1", "--right", "(1 _ _)"],
        ["nonsense"],
    ],
)
def test_input_errors(argv):
    assert call(*argv)[0] == 2


def test_poset_from_file(tmp_path):
    p = tmp_path / "q.json"
    p.write_text(TRIV2)
    assert call("dims", "--poset", str(p), "--max-arity", "3")[1].strip() == "1 2 6"
