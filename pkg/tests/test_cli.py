import json

import pytest

from tlgsb.cli import main
from tlgsb.presentations import build_defining, serialize_presentation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_verify_b4(capsys):
    code, rep = run_json(capsys, "verify", "--family", "B", "--n", "4")
    assert code == 0
    assert rep["verdicts"] == {"closed": True, "count_matches_formula": True}
    assert rep["counts"]["standard_count"] == rep["counts"]["formula"] == 83
    assert rep["witnesses"] == []
    assert {"family", "n", "verdicts", "witnesses", "counts"} <= rep.keys()


def test_verify_a4_text(capsys):
    code, out, _ = run(capsys, "verify", "--family", "A", "--n", "4")
    assert code == 0
    assert "standard count: 14" in out and out.strip().endswith("verified")


def test_verify_printed_list_fails(capsys):
    code, rep = run_json(capsys, "verify", "--family", "B", "--n", "3", "--basis", "printed")
    assert code == 2
    assert rep["verdicts"]["closed"] is False
    assert rep["counts"]["standard_count"] == 30
    assert rep["witnesses"]


def test_verify_file_without_lemma_relations(capsys, tmp_path):
    path = tmp_path / "b3.txt"
    path.write_text(serialize_presentation(build_defining("B", 3)))
    code, rep = run_json(capsys, "verify", "--presentation", str(path))
    assert code == 2
    assert rep["verdicts"]["closed"] is False
    assert rep["witnesses"]
    assert rep["family"] == "B" and rep["n"] == 3


def test_complete_a3(capsys):
    code, rep = run_json(capsys, "complete", "--family", "A", "--n", "4")
    assert code == 0
    assert rep["status"] == "completed"
    assert rep["counts"]["standard_count"] == 14


def test_complete_closed_input_unchanged(capsys):
    code, rep = run_json(capsys, "complete", "--family", "B", "--n", "3", "--basis", "gsb")
    assert code == 0 and rep["new_rules"] == 0 and len(rep["rules"]) == 10


def test_complete_limit(capsys):
    code, out, _ = run(capsys, "complete", "--family", "B", "--n", "3", "--max-rules", "0")
    assert code == 3
    assert "limit hit" in out and "pending" in out


def test_completed_basis_limit(capsys):
    code, rep = run_json(capsys, "count", "--family", "D", "--n", "4", "--basis", "completed",
                         "--max-rules", "0")
    assert code == 3 and rep["pending"] > 0


def test_count_d4(capsys):
    code, rep = run_json(capsys, "count", "--family", "D", "--n", "4")
    assert code == 0
    assert (rep["standard_count"], rep["formula"], rep["match"]) == (48, 48, True)


def test_count_infinite_presentation(capsys, tmp_path):
    path = tmp_path / "free.txt"
    path.write_text("gens: x y\nrel: x x = x\n")
    code, rep = run_json(capsys, "count", "--presentation", str(path), "--max-degree", "4")
    assert code == 0
    assert rep["finite"] is False and rep["per_degree"] == [1, 2, 3, 5, 8]


def test_list_b3_contains_e0(capsys):
    code, out, _ = run(capsys, "list", "--family", "B", "--n", "3", "--contains", "e0")
    assert code == 0 and len(out.splitlines()) == 19


def test_list_compact_notation(capsys):
    code, out, _ = run(capsys, "list", "--family", "A", "--n", "4", "--notation", "compact")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 14
    assert "E{3,1}" in lines and "E{2,1} E{3,2}" in lines


def test_list_csv(capsys, tmp_path):
    out = tmp_path / "words.csv"
    code, _, _ = run(capsys, "list", "--family", "B", "--n", "2", "--format", "csv", "--out", str(out))
    rows = out.read_text().splitlines()
    assert code == 0 and rows[0] == "index,word" and len(rows) == 8


def test_nf_b3(capsys):
    code, out, _ = run(capsys, "nf", "--family", "B", "--n", "3", "--word", "e2 e0 e1 e0 e2 e1 e0")
    assert code == 0 and out.strip() == "d * e0 e2 e1 e0"
    code, rep = run_json(capsys, "nf", "--family", "B", "--n", "3", "--word", "e2 e0 e1 e0 e2 e1 e0")
    assert rep["normal_form"] == [{"coef": "d", "word": [0, 2, 1, 0]}]


def test_nf_compact(capsys):
    code, out, _ = run(capsys, "nf", "--family", "B", "--n", "3", "--notation", "compact",
                       "--word", "E{2} E{0} E{1,0} E{2,0}")
    assert code == 0 and out.strip() == "d * E{0} E{2,0}"


def test_mult_d4(capsys):
    code, rep = run_json(capsys, "mult", "--family", "D", "--n", "4", "--left", "e3",
                         "--right", "e0 e2 e1 e3 e2 e0")
    assert code == 0
    assert rep["product"] == [{"coef": "1", "word": [0, 1, 3]}]
    assert rep["verdicts"]["single_term"]


def test_mult_rejects_non_standard(capsys):
    code, _, err = run(capsys, "mult", "--family", "A", "--n", "4", "--left", "e1 e1", "--right", "e2")
    assert code == 4 and "not standard" in err


def test_table_json(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, _, _ = run(capsys, "table", "--family", "B", "--n", "3", "--format", "json", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == 0
    assert len(rep["basis"]) == 24 and len(rep["entries"]) == 576
    assert rep["verdicts"]["product_closure"] is True
    assert set(rep["entries"][0]) == {"row", "col", "coef", "word"}


def test_table_budget(capsys):
    code, _, _ = run(capsys, "table", "--family", "B", "--n", "4", "--budget", "10")
    assert code == 3


def test_output_is_deterministic(capsys):
    a = run(capsys, "verify", "--family", "D", "--n", "4", "--format", "json")
    b = run(capsys, "verify", "--family", "D", "--n", "4", "--format", "json")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["verify", "--family", "D", "--n", "3"],
    ["verify", "--family", "B"],
    ["verify"],
    ["verify", "--family", "Q", "--n", "3"],
    ["nf", "--family", "A", "--n", "4", "--word", "e9"],
    ["nf", "--family", "A", "--n", "4"],
    ["verify", "--presentation", "/nonexistent/file.txt"],
    ["bogus"],
])
def test_input_errors(capsys, argv):
    assert main(argv) == 4
    capsys.readouterr()


def test_parse_error_exit(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("gens: x\nrel: x x = = x\n")
    code, _, err = run(capsys, "verify", "--presentation", str(path))
    assert code == 4 and "line 2" in err
