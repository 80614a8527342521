import numpy as np
import pytest

from morphokit import Configuration, standardize
from morphokit.io import load_arrows

A_COORDS = [[2, 0], [1, 1], [0, 0], [0, -1], [2, -2]]
B_COORDS = [[20, 0], [1, 1], [0, 0], [0, -1], [2, -2]]

_acceptance_lines: list[str] = []


@pytest.fixture
def config_a():
    return Configuration("A", A_COORDS)


@pytest.fixture
def config_b():
    return Configuration("B", B_COORDS)


@pytest.fixture(scope="session")
def arrows():
    return load_arrows()


@pytest.fixture(scope="session")
def std_arrows(arrows):
    return {c.id: standardize(c) for c in arrows.configurations}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
