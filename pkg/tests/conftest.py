import numpy as np
import pytest

from lagiso.families import make_plane, make_type1, make_type2_cp, make_type2_flat, sin, cos


@pytest.fixture(scope="session")
def families():
    """Every certified family, keyed by a short label."""
    return {
        "plane": make_plane(),
        "type1": make_type1(sin(), cos()),
        "flat-r0": make_type2_flat(0.0),
        "flat-r1": make_type2_flat(1.0),
        "cp-r0": make_type2_cp(0.0),
        "cp-r0.5": make_type2_cp(0.5),
        "cp-r1": make_type2_cp(1.0),
        "cp-r2": make_type2_cp(2.0),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
