from fractions import Fraction

import pytest

from quasifree import BasisSymbol, Context, GroupDescriptor, OmegaData


@pytest.fixture
def Z():
    return GroupDescriptor("discrete", free_rank=1)


@pytest.fixture
def Z2():
    return GroupDescriptor("discrete", free_rank=2)


@pytest.fixture
def real_line():
    return GroupDescriptor(
        "real_line",
        basis=(
            BasisSymbol("1", Fraction(1), Fraction(1)),
            BasisSymbol(
                "sqrt2",
                Fraction("1.414213"),
                Fraction("1.414214"),
            ),
        ),
    )


@pytest.fixture
def omega12(Z):
    return OmegaData((Z.element([1]), Z.element([2])))


@pytest.fixture
def omega_pm(Z):
    return OmegaData((Z.element([1]), Z.element([-1])))


@pytest.fixture
def ctx12(omega12):
    return Context(omega12)


@pytest.fixture
def ctx_pm(omega_pm):
    return Context(omega_pm)
