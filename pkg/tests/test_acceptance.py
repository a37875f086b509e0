"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines; the same
sweep is available as ``qgalois report``.
"""

import pytest

from qgalois import acceptance
from qgalois.sampler import DEFAULT_SEED

# collected for the terminal summary in conftest.py
ACCEPTANCE_LINES: list[str] = []


def test_tolerances_are_pinned():
    assert acceptance.KOLMOGOROV_AT_64_2 == 0.05
    assert acceptance.LLT_AT_64 == 0.01
    assert acceptance.CHI_SQUARE_ALPHA == 1e-3
    assert acceptance.HOEFFDING_SE == 3
    assert acceptance.CF_FLOOR == 0.005
    assert acceptance.MC_SAMPLES == 100_000
    assert acceptance.HOEFFDING_DRAWS == 1_000_000


def test_every_criterion_is_covered():
    assert len(acceptance.CHECKS) == 10


@pytest.mark.parametrize(
    "check", acceptance.CHECKS, ids=[f"criterion_{i:02d}" for i in range(1, 11)]
)
def test_criterion(check):
    seeded = check in (acceptance.check_construction_equivalence, acceptance.check_hoeffding)
    res = check(DEFAULT_SEED) if seeded else check()
    ACCEPTANCE_LINES.append(res.line())
    print("\n" + res.line())
    assert res.passed, res.detail
