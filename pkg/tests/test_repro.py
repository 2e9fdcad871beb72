import math

import pytest

from helstrom_gpt import repro


def test_all_cases_pass():
    rows = repro.run("all")
    assert {r.case for r in rows} == set(repro.CASES)
    assert all(r.passed for r in rows)


def test_symmetric_row_n3():
    rows = [r for r in repro.run("symmetric") if r.label.startswith("N=3 theta=1.5708")]
    assert rows
    for r in rows:
        assert r.expected == pytest.approx(2 / 3, abs=1e-15)
        assert r.passed


def test_square_pure_rows():
    rows = repro.run("square-pure")
    assert [r.expected for r in rows[:2]] == [0.5, 0.5]
    assert all(r.passed for r in rows)


def test_seed_changes_random_rows():
    a = repro.run("qubit-binary", seed=1)
    b = repro.run("qubit-binary", seed=2)
    assert a[0].expected != b[0].expected
    assert repro.run("qubit-binary", seed=1)[0].expected == a[0].expected


def test_row_failure_and_nan():
    assert not repro.Row("x", "y", 1.0, 1.1, 1e-9).passed
    assert not repro.Row("x", "y", 1.0, math.nan, 1e-9).passed


def test_unknown_case():
    with pytest.raises(ValueError):
        repro.run("hexagon")


def test_table_format():
    text = repro.format_table(repro.run("square-pure"))
    lines = text.splitlines()
    assert lines[0].split()[:2] == ["case", "instance"]
    assert lines[-1] == "3/3 rows pass"
    assert all(line.endswith("pass") for line in lines[2:-1])
