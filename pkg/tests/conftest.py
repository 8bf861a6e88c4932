from pathlib import Path

import pytest

from optmech.model import load_scenario
from optmech.welfare import ExternalityContext
from optmech.numerics import Rat

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def scenario_path(name: str) -> Path:
    return SCENARIOS / f"{name}.json"


@pytest.fixture
def two_rays():
    return load_scenario(scenario_path("two_rays"))


@pytest.fixture
def two_boxes():
    return load_scenario(scenario_path("two_boxes"))


@pytest.fixture
def two_boxes_undercut():
    return load_scenario(scenario_path("two_boxes_undercut"))


@pytest.fixture
def ctx1():
    """Bidder 1's context in the two-item example: (none, A, B) -> (4, 3, 1)."""
    return ExternalityContext(0, (Rat(4), Rat(3), Rat(1)))


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
