import sys
from pathlib import Path

import pytest

from symchaos import catalog

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parents[1]
SFTS = ROOT / "sfts"

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def full2():
    return catalog.full_shift(2)


@pytest.fixture
def golden():
    return catalog.golden_mean()


@pytest.fixture
def two_cycle():
    return catalog.cycle_shift(2)


@pytest.fixture
def record_acceptance():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record
