"""One test per acceptance criterion; each prints its PASS/FAIL lines to the terminal."""

import pytest

from qjones import acceptance
from qjones.acceptance import CRITERIA, Check


def _report(capsys, rows):
    with capsys.disabled():
        print()
        for row in rows:
            print(row.line())


@pytest.mark.parametrize("fn", CRITERIA, ids=[f"{i:02d}_{fn.__name__}" for i, fn in enumerate(CRITERIA, start=1)])
def test_criterion(fn, capsys):
    rows = fn()
    _report(capsys, rows)
    assert rows
    failing = [r.line() for r in rows if not r.ok]
    assert not failing, "\n".join(failing)


@pytest.mark.xfail(strict=True, reason="the literal statement is off by a factor {1}^2; see the corrected row")
def test_bbl_statement_as_written():
    rows = acceptance.laplace_suite()
    (literal,) = [r for r in rows if r.expected_fail]
    assert literal.passed


def test_bbl_corrected_holds():
    rows = acceptance.laplace_suite()
    assert [r for r in rows if "corrected" in r.name and r.passed]


def test_check_line_format():
    assert Check(3, "x", True).line() == "[PASS]  3. x"
    assert Check(4, "y", False, "why", expected_fail=True).line() == "[FAIL (expected)]  4. y -- why"
    assert not Check(4, "z", True, expected_fail=True).ok


def test_selftest_exit_codes(monkeypatch, capsys):
    from qjones.cli import main

    monkeypatch.setattr(acceptance, "run_all", lambda echo=print: [Check(1, "ok", True)])
    assert main(["selftest"]) == 0
    monkeypatch.setattr(acceptance, "run_all", lambda echo=print: [Check(1, "bad", False)])
    assert main(["selftest"]) == 1
    assert "0/1" in capsys.readouterr().out
