import numpy as np
import pytest

from gaborlab import Gaussian, Hermite, OddCompactBump, sample

_REPORT: list[str] = []


@pytest.fixture(scope="session")
def gauss():
    return sample(Gaussian(1.0))


@pytest.fixture(scope="session")
def herm1():
    return sample(Hermite(1))


@pytest.fixture(scope="session")
def herm3():
    return sample(Hermite(3))


@pytest.fixture(scope="session")
def bump():
    return sample(OddCompactBump())


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def report():
    """Collects one summary line per acceptance criterion."""

    def add(line: str):
        _REPORT.append(line)
        print(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT:
            terminalreporter.write_line(line)
