"""Acceptance criteria 1-10 at their stated tolerances, one PASS/FAIL line each."""

import pytest

from cftr.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA], ids=[f"criterion-{n}" for n, *_ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
