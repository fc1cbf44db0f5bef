"""The ten acceptance criteria, exact, one PASS/FAIL line each.

Run with pytest, or directly: python3 tests/test_acceptance.py
"""

import sys

import pytest

from cdgraded.acceptance import CRITERIA

SEEDED = {1, 3, 8}


def _run(fn, seed=0):
    return fn(seed=seed) if fn.number in SEEDED else fn()


@pytest.mark.parametrize("fn", CRITERIA, ids=[f"criterion{fn.number}" for fn in CRITERIA])
def test_criterion(fn, capsys):
    c = _run(fn)
    with capsys.disabled():
        print("\n" + c.line())
    assert c.passed, c.detail
    assert c.in_time, f"{c.seconds:.1f}s over the {c.budget:.0f}s budget"


if __name__ == "__main__":
    results = [_run(fn) for fn in CRITERIA]
    for c in results:
        print(c.line())
    sys.exit(0 if all(c.passed and c.in_time for c in results) else 1)
