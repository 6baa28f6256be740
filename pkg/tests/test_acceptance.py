"""Acceptance gate: every numbered criterion runs end to end.

Each criterion is one parametrized test, so `pytest -v` prints one pass/fail
line per criterion; the criterion's own summary line is printed as well and
shows up in captured output. Criterion 4 rebuilds the two largest projective
groups and is marked slow (deselect with -m "not slow").
"""

import pytest

from trigroup.acceptance import CRITERIA, run_criterion

FAST = [number for number, _, _, slow in CRITERIA if not slow]
SLOW = [number for number, _, _, slow in CRITERIA if slow]


def _run_and_report(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.line() + "\n" + "\n".join(result.details)


@pytest.mark.parametrize(
    "number", FAST, ids=[f"criterion-{n:02d}" for n in FAST])
def test_criterion(number):
    _run_and_report(number)


@pytest.mark.slow
@pytest.mark.parametrize(
    "number", SLOW, ids=[f"criterion-{n:02d}" for n in SLOW])
def test_slow_criterion(number):
    _run_and_report(number)


def test_registry_is_complete():
    numbers = [number for number, _, _, _ in CRITERIA]
    assert numbers == list(range(1, 13))
    assert SLOW == [4]
