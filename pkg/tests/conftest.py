import pytest

from nodalcurves import SeveriTable, default_config, fit_A


@pytest.fixture(scope="session")
def table():
    """One shared memo table; entries are write-once so sharing is safe."""
    return SeveriTable()


@pytest.fixture(scope="session")
def fit1(table):
    return fit_A(default_config(1), table)


@pytest.fixture(scope="session")
def fit2(table):
    return fit_A(default_config(2), table)


@pytest.fixture(scope="session")
def fit3(table):
    return fit_A(default_config(3), table)
