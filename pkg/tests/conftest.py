import numpy as np
import pytest

from multcode.finite_field import GF

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=SMALL_ORDERS, ids=lambda q: f"GF{q}")
def field(request):
    return GF(request.param)


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line[1])
