"""One test per acceptance criterion; each prints a PASS/FAIL line (run with -s to see them)."""
import pytest

from ghgkit import acceptance


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    result = acceptance.CRITERIA[number - 1](quick=False)
    print("\n" + result.line())
    assert result.number == number
    assert result.passed, result.detail
