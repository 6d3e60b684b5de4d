import pytest

from cftr.examples import example_system, line_system, omega_system


@pytest.fixture(scope="session")
def line_sys():
    return line_system()


@pytest.fixture(scope="session")
def omega_sys():
    return omega_system()


@pytest.fixture(scope="session")
def torsion_sys():
    return example_system("torsion")
