import pytest

from tentcode import Mu

TEST_MUS = ("3/2", "4/3", "7/4", "9/5")


@pytest.fixture(params=TEST_MUS)
def mu(request):
    return Mu.parse(request.param)


@pytest.fixture
def mu32():
    return Mu(3, 2)
