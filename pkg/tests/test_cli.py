import json

import pytest

from ciauto.cli import main


def _run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def _records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_exceptions_theorem(capsys):
    code, out = _run(["exceptions", "--n-max", "12", "--emit", "theorem", "--format", "structured"], capsys)
    recs = _records(out)
    assert code == 0
    assert recs[0]["record"] == "config" and recs[-1]["record"] == "summary"
    tuples = [r["type"] for r in recs if r["record"] == "result"]
    assert tuples == ["(5,2,3)", "(6,2,3)", "(6,2,4)", "(6,3,3)", "(7,2,2,3)", "(7,2,3)", "(8,2,3)", "(8,3,3)",
                      "(9,2,2,3)", "(10,2,3)"]
    assert all(r["schema"] == 1 for r in recs)


def test_exceptions_lemma_lists(capsys):
    code, out = _run(["exceptions", "--n-max", "12", "--format", "structured"], capsys)
    recs = [r for r in _records(out) if r.get("kind") == "tuple"]
    by_l = {}
    for r in recs:
        by_l.setdefault(r["l"], []).append(r["type"])
    assert code == 0 and {l: len(v) for l, v in by_l.items()} == {2: 8, 3: 3, 4: 1}


def test_birres_report(capsys):
    code, out = _run(["birres", "--random-maps", "1000", "--seed", "1", "--format", "structured"], capsys)
    summary = _records(out)[-1]
    assert code == 0 and summary["failed"] == 0 and summary["passed"] == 1050


def test_certify_single_type(capsys):
    code, out = _run(["certify", "--n", "5", "--degrees", "3,3", "--p-max", "7"], capsys)
    assert code == 0 and "summary: passed=81 failed=0" in out


def test_certify_failure_sets_exit_code(capsys):
    code, out = _run(["certify", "--n", "5", "--degrees", "2,2,4", "--p-max", "2", "--format", "structured"], capsys)
    recs = _records(out)
    bad = [r for r in recs if r.get("status") == "failed"]
    assert code == 1 and len(bad) == 1 and (bad[0]["lhs"], bad[0]["rhs"]) == ("124", "123")


def test_structured_output_is_deterministic(capsys, tmp_path):
    argv = ["birres", "--random-maps", "40", "--seed", "9", "--format", "structured"]
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    main(argv + ["--out", str(a)])
    main(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    summary = json.loads(a.read_text().splitlines()[-1])
    assert summary["passed"] + summary["failed"] + summary["unknown"] == len(a.read_text().splitlines()) - 2


def test_records_sorted_by_key(capsys):
    _, out = _run(["certify", "--n-max", "6", "--p-max", "3", "--format", "structured"], capsys)
    keys = [r["key"] for r in _records(out) if r["record"] == "result"]
    assert keys == sorted(keys)


def test_budget_overflow_marks_incomplete(capsys):
    code, out = _run(["varieties", "--n", "4", "--degrees", "2,3", "--q", "101", "--budget-points", "1000",
                      "--format", "structured"], capsys)
    recs = _records(out)
    assert code == 0 and recs[-1]["incomplete"] is True and recs[-1]["unknown"] == 1


def test_varieties_emits_forms(capsys):
    code, out = _run(["varieties", "--n", "3", "--degrees", "3", "--q", "11", "--format", "structured"], capsys)
    nodes = next(r for r in _records(out) if r.get("kind") == "nodes")
    assert code == 0 and nodes["forms"][0].startswith("9*z0^1*z1^1*z2^1")


def test_torelli_flags_are_not_failures(capsys):
    code, out = _run(["torelli", "--n-max", "4", "--format", "structured"], capsys)
    recs = _records(out)
    flagged = {r["type"]: r for r in recs if r.get("outcome") == "flagged"}
    assert code == 0 and set(flagged) == {"(3,2)", "(4,2)", "(4,2,2)", "(4,2,3)", "(3,3)", "(3,4)"}
    assert flagged["(3,3)"]["caveat"] and flagged["(3,4)"]["exception"] == "quartic K3"
    assert all("trace" in r for r in flagged.values())


def test_eigen_single_n(capsys):
    code, out = _run(["eigen", "--n", "4", "--p-max", "5", "--d-max", "5"], capsys)
    assert code == 0 and "failed=0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["torelli", "--q", "100"],
        ["varieties", "--budget-points", "0"],
        ["certify", "--p-max", "1"],
        ["exceptions", "--emit", "nothing"],
        ["certify", "--degrees", "3,x"],
    ],
)
def test_bad_flags(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_half_specified_type(capsys):
    assert main(["certify", "--n", "5"]) == 2
