import json

import pytest

from superh.cli import (
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_USAGE,
    load_report,
    main,
    parse_range,
)
from superh.checks import Report


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("0..3") == [0, 1, 2, 3]
    with pytest.raises(Exception):
        parse_range("3..0")
    with pytest.raises(Exception):
        parse_range("x")


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "-m", "2", "-n", "1", "-k", "0..3")
    assert code == EXIT_PASS
    lines = [l for l in out.splitlines() if l.strip().startswith("2  1  2")]
    assert lines and "7" in lines[0] and "6" in lines[0] and "yes" in lines[0]


def test_dims_classical(capsys):
    code, out, _ = run(capsys, "dims", "-m", "3", "-n", "0", "-k", "2", "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    (row,) = doc["rows"]
    assert row["dim_H"] == 5 and row["dim_L"] == 5 and row["window"] == "no"


def test_dims_degree_zero(capsys):
    code, out, _ = run(capsys, "dims", "-m", "2", "-n", "1", "-k", "0", "--format", "json")
    (row,) = load_report(out)["rows"]
    assert row["dim_H"] == 1 and row["dim_L"] == 1


def test_json_roundtrip_bit_exact(capsys):
    code, out, _ = run(capsys, "check", "windows", "-m", "2", "-n", "1", "-k", "3",
                       "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    assert json.dumps(doc, sort_keys=True, default=str) + "\n" == out
    assert doc["status"] == "pass"
    assert any(r["k"] == 2 for r in doc["rows"])


def test_check_sl2(capsys):
    code, out, _ = run(capsys, "check", "sl2", "-m", "2", "-n", "1", "-k", "4")
    assert code == EXIT_PASS and "pass" in out


def test_check_irreducibility(capsys):
    code, out, _ = run(capsys, "check", "irreducibility", "-m", "3", "-n", "1",
                       "-k", "4", "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    assert all(r["irreducible"] for r in doc["rows"])


def test_integrate_examples(capsys):
    code, out, _ = run(capsys, "integrate", "1", "-m", "3", "-n", "1", "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    assert all(r["q"] == "2" and r["h"] == 0 for r in doc["rows"])

    code, out, _ = run(capsys, "integrate", "x1^2", "-m", "2", "-n", "0", "--format", "json")
    doc = load_report(out)
    assert all(r["q"] == "1" and r["h"] == 2 for r in doc["rows"])  # pi

    code, out, _ = run(capsys, "integrate", "xg1", "-m", "2", "-n", "1", "--format", "json")
    doc = load_report(out)
    assert all(r["q"] == "0" for r in doc["rows"])


def test_integrate_parse_error(capsys):
    code, out, err = run(capsys, "integrate", "x1 + $", "-m", "2", "-n", "1")
    assert code == EXIT_USAGE


def test_usage_error_exit_code(capsys):
    assert main(["dims", "-m", "2"]) == EXIT_USAGE
    assert main(["check", "nosuch", "-m", "2", "-n", "1"]) == EXIT_USAGE


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "-m", "2", "-n", "1", "-k", "2",
                       "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    dims = sorted(r["dim"] for r in doc["rows"] if "dim" in r)
    assert dims == [1, 2, 4]


def test_branch_commands(capsys):
    code, out, _ = run(capsys, "branch", "-m", "2", "-n", "1", "-k", "2",
                       "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    comps = [(r["l"], r["dim"]) for r in doc["rows"] if "l" in r]
    assert comps == [(1, 3), (2, 3)]

    code, out, _ = run(capsys, "branch", "-m", "3", "-n", "1", "-k", "3",
                       "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    assert doc["status"] == "degenerate"
    assert doc["rows"][0]["case"] == "not_completely_reducible"


def test_fischer_command(capsys):
    code, out, _ = run(capsys, "fischer", "-m", "2", "-n", "1", "-k", "0..3",
                       "--format", "json")
    assert code == EXIT_PASS
    doc = load_report(out)
    flags = {r["k"]: r["direct_sum"] for r in doc["rows"]}
    assert flags == {0: "yes", 1: "yes", 2: "no", 3: "yes"}


def test_csv_output(capsys):
    code, out, _ = run(capsys, "dims", "-m", "2", "-n", "1", "-k", "0..2",
                       "--format", "csv")
    assert code == EXIT_PASS
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:3] == ["m", "n", "k"]
    assert len(lines) == 4


def test_failure_exit_code():
    report = Report("x", {})
    report.fail("boom")
    assert report.exit_code == EXIT_FAIL


def test_thread_cap_env_var(monkeypatch):
    from superh.checks import run_suite, thread_count
    monkeypatch.setenv("SUPERH_THREADS", "2")
    assert thread_count() == 2
    report = run_suite("all", [(2, 1)], 3)
    assert report.status == "pass"
    monkeypatch.setenv("SUPERH_THREADS", "bogus")
    assert thread_count() == 1
