import pytest

from qpbw import cyclotomic_field


@pytest.fixture
def F1():
    return cyclotomic_field(1)


@pytest.fixture
def F3():
    return cyclotomic_field(3)


@pytest.fixture
def F4():
    return cyclotomic_field(4)
