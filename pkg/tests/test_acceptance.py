"""End-to-end acceptance checks.

Each criterion from :mod:`bcwheel.acceptance` runs as its own
parametrized case, so a verbose pytest run prints one pass/fail line
per criterion.  All checks are exact; there are no tolerances to tune.
The wheel-vanishing instances rebuild several polynomials from scratch,
so this file dominates the suite's runtime.
"""
import pytest

from bcwheel.acceptance import CRITERIA


@pytest.mark.parametrize(
    ("name", "criterion"), CRITERIA, ids=[name for name, _ in CRITERIA]
)
def test_criterion(name, criterion):
    ok, detail = criterion()
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"
