import pytest

from srbetti import complexes
from srbetti.subdivision import barycentric


@pytest.fixture(scope="session")
def c6():
    return complexes.cycle(6)


@pytest.fixture(scope="session")
def sd_simplex2():
    return barycentric(complexes.simplex(2))


@pytest.fixture(scope="session")
def sd_simplex3():
    return barycentric(complexes.simplex(3))


@pytest.fixture(scope="session")
def rp2():
    return complexes.rp2_six()


@pytest.fixture(scope="session")
def pendants():
    """Triangle cycle with two pendant edges at one vertex."""
    return complexes.stacked_attach(complexes.cycle(3), 2, (0,))
