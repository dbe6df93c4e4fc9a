import pytest

from pinsurf.homology import model_for

SMALL = ("O0", "O1", "N1", "N2", "N3", "N1:b=1", "O0:b=2", "O1:b=1", "N2:b=1")


@pytest.fixture(params=SMALL)
def model(request):
    return model_for(request.param)
