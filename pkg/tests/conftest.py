import math

import pytest

from slabeig import _backend
from slabeig.grid import partition
from slabeig.potentials import harmonic, polynomial, square_well
from slabeig.spectrum import solve

BACKENDS = _backend.available()


@pytest.fixture(params=sorted(BACKENDS))
def kern(request):
    """Each importable kernel module in turn."""
    return BACKENDS[request.param]


@pytest.fixture(scope="session")
def harmonic10():
    return partition(harmonic(-10, 10), 2000)


@pytest.fixture(scope="session")
def harmonic10_levels(harmonic10):
    return solve(harmonic10, 0.0, 14.0, 0.005, 1e-10)


@pytest.fixture(scope="session")
def quartic1():
    return partition(polynomial([(2, 1), (4, 1)], -1, 1), 2000)


@pytest.fixture
def box():
    return square_well(-5, 5)


def box_level(p, L=5.0):
    return p * p * math.pi**2 / (2 * L) ** 2


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
