"""
Shared presentations for the xinner test suite
"""

import pytest

from xinner.examples.fixtures import load_example


@pytest.fixture(scope="session")
def weyl():
    return load_example("weyl.qalg")


@pytest.fixture(scope="session")
def ex2_4():
    return load_example("ex2_4.qalg")


@pytest.fixture(scope="session")
def color():
    return load_example("ex2_6.qalg")


@pytest.fixture(scope="session")
def ex4_3():
    return load_example("ex4_3.qalg")


@pytest.fixture(scope="session")
def ex4_4():
    return load_example("ex4_4.qalg")


@pytest.fixture(scope="session")
def plane():
    return load_example("quantum_plane.qalg")


@pytest.fixture(scope="session")
def space3():
    return load_example("quantum_space3.qalg")
