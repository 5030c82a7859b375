import random

import pytest

from qbic import make_field


@pytest.fixture(scope="session")
def F4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def F9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def F16():
    return make_field(2, 4)


@pytest.fixture(scope="session")
def F81():
    return make_field(3, 4)


@pytest.fixture()
def rng():
    return random.Random(20260810)
