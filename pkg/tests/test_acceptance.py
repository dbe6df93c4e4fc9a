"""Exit criteria; each prints one PASS/FAIL line (run with ``-s`` to see them inline)."""

import pytest

from pinsurf.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[name for _, name, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def test_fault_injection_is_detected():
    result = run_criterion(2, inject_fault=True)
    assert not result.passed
    assert "1 failed" in result.detail
