import json
import sys
from pathlib import Path

import pytest
from hypothesis import settings

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
sys.path.insert(0, str(TESTS))

settings.register_profile("latile", deadline=None, max_examples=60)
settings.load_profile("latile")

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def trichotomy_cases():
    return json.loads((FIXTURES / "trichotomy_cases.json").read_text())
