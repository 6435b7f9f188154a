import json

import pytest

from antisquares.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    records = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
    return code, records, out


def test_analyze_word(capsys):
    code, records, out = run(capsys, "analyze", "010011")
    assert code == EXIT_OK
    assert records[0]["critical_exponent"] == "2/1"
    assert records[0]["antisquare_count"] == 4
    assert "cexp=2" in out


def test_analyze_with_constraints_fail(capsys):
    code, records, _ = run(capsys, "analyze", "0011", "--max-order", "2")
    assert code == EXIT_VERIFICATION_FAILED
    assert records[0]["pass"] is False
    assert records[0]["violation"]["constraint"] == "antisquare-order"


def test_analyze_file(tmp_path, capsys):
    path = tmp_path / "words.txt"
    path.write_text("01\n10\n")
    code, records, _ = run(capsys, "analyze", str(path))
    assert code == EXIT_OK
    assert [r["word"] for r in records] == ["01", "10"]


def test_analyze_bad_letters(capsys):
    code, _, _ = run(capsys, "analyze", "01a1")
    assert code == EXIT_USAGE


def test_generate_word_w(capsys):
    code, _, out = run(capsys, "generate", "--word-w", "--length", "30")
    assert code == EXIT_OK
    line = out.strip().splitlines()[0]
    assert len(line) == 30
    assert line.startswith("010111")


def test_generate_morphism(capsys):
    code, _, out = run(capsys, "generate", "--morphism", "fib", "--length", "13")
    assert code == EXIT_OK
    assert out.strip().splitlines()[0] == "0100101001001"


def test_generate_unknown_morphism(capsys):
    code, _, _ = run(capsys, "generate", "--morphism", "nope", "--length", "5")
    assert code == EXIT_USAGE


def test_search_exhausts(capsys):
    code, records, _ = run(capsys, "search", "--beta", "2", "--max-depth", "16")
    assert code == EXIT_OK
    assert records[0]["max_length"] == 3
    assert records[0]["exhausted"] is True


def test_search_budget_exit(capsys):
    code, records, _ = run(
        capsys, "search", "--max-order", "2", "--budget", "50", "--max-depth", "64"
    )
    assert code == EXIT_BUDGET
    assert records[0]["exhausted"] is False


def test_count(capsys):
    code, records, _ = run(capsys, "count", "--beta", "2", "--n-max", "5")
    assert code == EXIT_OK
    assert records[0]["counts"] == [1, 2, 2, 2, 0, 0]


def test_verify_morphism_single(capsys):
    code, records, _ = run(capsys, "verify-morphism", "zeta3")
    assert code == EXIT_OK
    assert records[0]["pass"] is True
    assert records[0]["complement_bound"] == 4


def test_verify_morphism_unknown(capsys):
    code, _, _ = run(capsys, "verify-morphism", "phi")
    assert code == EXIT_USAGE


def test_minimal_antisquares(capsys):
    code, _, out = run(capsys, "minimal-antisquares", "--max-order", "4")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "1\t01,10"
    assert lines[3].rstrip() == "4"  # order 4 has no minimal antisquares


def test_minimal_antisquares_closed_form(capsys):
    code, _, out = run(capsys, "minimal-antisquares", "--max-order", "5", "--closed-form")
    assert code == EXIT_OK
    assert "0001011101" in out


def test_reproduce_table_1(capsys):
    code, records, _ = run(capsys, "reproduce-tables", "--table", "1")
    assert code == EXIT_OK
    assert all(r["pass"] for r in records)


def test_usage_errors():
    with pytest.raises(SystemExit):
        main(["generate", "--length", "5"])
    with pytest.raises(SystemExit):
        main(["verify-morphism"])
    with pytest.raises(SystemExit):
        main([])
