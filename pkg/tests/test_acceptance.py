"""The ten acceptance criteria, each at its stated tolerance.

One PASS/FAIL line per criterion is written straight to the terminal (also
under output capture), e.g. ``criterion  7 [PASS] gaussian_uncoded_tight: ...``.
"""
import json

import pytest

from bcsep.checks import ACCEPTANCE
from bcsep.regions import _jsonable


@pytest.mark.parametrize("number,check", ACCEPTANCE, ids=[f"criterion_{n}" for n, _ in ACCEPTANCE])
def test_acceptance(number, check, capsys):
    result = check()
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {result.line()}")
    assert result.passed, json.dumps(_jsonable(result.to_dict()), indent=1)


def test_all_criteria_listed():
    assert [n for n, _ in ACCEPTANCE] == list(range(1, 11))
