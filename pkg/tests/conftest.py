import pytest

from cdgraded.cd_algebra import CayleyDickson


@pytest.fixture(scope="session")
def octonions():
    return CayleyDickson()


@pytest.fixture(scope="session")
def g2(octonions):
    return octonions.grading(2)


@pytest.fixture(scope="session")
def g3(octonions):
    return octonions.grading(3)
