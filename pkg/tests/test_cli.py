import json

import pytest

from main import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_rank_range


@pytest.fixture(autouse=True)
def few_samples(monkeypatch):
    monkeypatch.setenv("COXRIG_SAMPLES", "20")


def test_parse_rank_range():
    assert parse_rank_range("4") == (4, 4)
    assert parse_rank_range("3..5") == (3, 5)


def test_word_reduce(capsys):
    assert main(["word", "reduce", "--n", "4", "1 1 2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"


def test_word_conj_test(capsys):
    assert main(["word", "conj-test", "--n", "3", "1", "2 1 2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "conjugate"


def test_word_decompose(capsys):
    assert main(["word", "decompose", "--n", "3", "1 2 1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1 | x2"


def test_bad_word_is_a_usage_error(capsys):
    assert main(["word", "reduce", "--n", "3", "1 5"]) == EXIT_USAGE
    assert "Error" in capsys.readouterr().err


def test_missing_rank_exits_from_argparse():
    with pytest.raises(SystemExit) as info:
        main(["word", "reduce", "1"])
    assert info.value.code == 2


def test_outer_equal(capsys):
    assert main(["aut", "outer-eq", "--n", "4", "ad(4)", "e"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "equal"


def test_aut_apply(capsys):
    assert main(["aut", "apply", "--n", "3", "--expr", "s1,2", "--word", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2 1 2"


def test_aut_apply_needs_word(capsys):
    assert main(["aut", "apply", "--n", "3", "s1,2"]) == EXIT_USAGE


def test_aut_matrix(capsys):
    assert main(["aut", "matrix", "--n", "3", "t1"]) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert record["matrix"] == [[-1, 1], [0, 1]]


def test_gilbert_dump(tmp_path):
    out = tmp_path / "relators.txt"
    assert main(["gilbert", "dump", "--n", "3", "--out", str(out)]) == EXIT_OK
    assert len(out.read_text().strip().splitlines()) == 93


def test_verify_writes_report(capsys):
    assert main(["verify", "--scope", "w4", "--n", "4"]) == EXIT_OK
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["totals"] == {"pass": 1, "fail": 0, "skipped": 0}
    assert "Step 1" in captured.err


def test_verify_to_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", "--scope", "s6", "--n", "4", "--out", str(out), "--seed", "3"]) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["seed"] == 3
    assert report["scope"] == "s6"


def test_injected_failure_exits_one(capsys):
    assert main(["verify", "--scope", "w4", "--n", "4", "--inject-failure"]) == EXIT_FAIL
    assert "FAIL" in capsys.readouterr().err


def test_bad_rank_range():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--n", "5..3"])
    assert info.value.code == 2


def test_spine_enumerate(capsys):
    assert main(["spine", "enumerate", "--n", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("s3-1:")


def test_spine_adjacency_json(capsys, tmp_path):
    assert main(["spine", "adjacency", "--n", "4", "--json", "--dot", str(tmp_path)]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 4
    assert sum(row["b_fixed"] for row in rows) == 1
    assert len(list(tmp_path.glob("*.dot"))) == 4


def test_spine_rank_guard():
    assert main(["spine", "enumerate", "--n", "8"]) == EXIT_USAGE


def test_aut_expression_after_options(capsys):
    assert main(["aut", "outer-eq", "--n", "4", "--expr", "ad(4)", "e"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "equal"


def test_aut_expressions_before_options(capsys):
    assert main(["aut", "outer-eq", "ad(4)", "e", "--n", "4"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "equal"


def test_stray_arguments_are_rejected():
    with pytest.raises(SystemExit) as info:
        main(["spine", "stars", "--n", "3", "junk"])
    assert info.value.code == 2
