import pytest

from gl2modp.correspondence import local_params
from gl2modp.dvr import make_dvr
from gl2modp.field import FiniteFieldCtx


@pytest.fixture
def q7():
    """p = 3, q = 7: the standard q = 1 mod p configuration."""
    return local_params(3, 7)


@pytest.fixture
def q5():
    """p = 3, q = 5: q = -1 mod p."""
    return local_params(3, 5)


@pytest.fixture
def F3():
    return FiniteFieldCtx(3)


@pytest.fixture
def O5(F3):
    return make_dvr(F3, 5)
