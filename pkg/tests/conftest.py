import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gan_qwr.materials import Geometry, MaterialParams  # noqa: E402


@pytest.fixture(scope="session")
def geo4():
    return Geometry.from_ids(4.0)


@pytest.fixture(scope="session")
def geo3():
    return Geometry.from_ids(3.0)


def deep_well(r0, shape="cylinder", m=0.13, depth_factor=1000.0):
    """Equal-mass well whose barrier is ``depth_factor`` times the GaN/AlN offset."""
    well = MaterialParams("deep-well", band_gap=1000.0, effective_mass_ratio=m, eps_static=9.56)
    gap = 1000.0 + depth_factor * 2100.0
    barrier = MaterialParams("deep-barrier", band_gap=gap, effective_mass_ratio=m, eps_static=9.56)
    return Geometry(r0, well, barrier, offset_ratio=0.76, shape=shape)
