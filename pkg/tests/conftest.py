import numpy as np
import pytest
from hypothesis import strategies as st

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
