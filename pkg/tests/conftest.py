import math

import pytest

from hetnet.geometry import CellGeometry
from hetnet.radio import SystemParams


@pytest.fixture
def baseline():
    return SystemParams()


@pytest.fixture
def geom(baseline):
    return CellGeometry(baseline.d)


@pytest.fixture
def unit_geom():
    return CellGeometry(1.0)


D_REF = 50.0 / math.sqrt(3.0)
