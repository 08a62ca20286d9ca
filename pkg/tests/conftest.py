import sys
from pathlib import Path

import pytest

# lets test modules share fixture builders (e.g. ``from test_impact import synthetic_xy``)
sys.path.insert(0, str(Path(__file__).parent))

_acceptance_lines = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    lines = request.config.stash.setdefault(_acceptance_lines, [])

    def log(criterion: str, passed: bool, detail: str) -> None:
        lines.append(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_acceptance_lines, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
