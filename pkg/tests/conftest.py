import os

import numpy as np
import pytest

from stableplace.core.config import SettleParams, ToolConfig, build_config
from stableplace.services.geometry import PointCloud, TriMesh, primitives
from stableplace.services.settling import PreparedBody, prepare_body

RUN_SLOW = os.environ.get("STABLEPLACE_RUN_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if RUN_SLOW:
        return
    skip = pytest.mark.skip(reason="set STABLEPLACE_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch):
    for key in list(os.environ):
        if key.startswith("STABLEPLACE_") and key != "STABLEPLACE_RUN_SLOW":
            monkeypatch.delenv(key)


@pytest.fixture
def config() -> ToolConfig:
    return build_config({})


@pytest.fixture
def settle_params() -> SettleParams:
    return SettleParams()


@pytest.fixture(scope="session")
def unit_cube() -> TriMesh:
    return primitives.cube(1.0)


@pytest.fixture(scope="session")
def cube_body(unit_cube) -> PreparedBody:
    return prepare_body(unit_cube)


@pytest.fixture(scope="session")
def cube_cloud(unit_cube) -> PointCloud:
    return PointCloud(unit_cube.vertices)


def box_surface_cloud(extents, per_face: int = 200, seed: int = 0) -> PointCloud:
    """Uniform grid-free samples on all six faces of an axis-aligned box centred at the origin."""
    rng = np.random.default_rng(seed)
    half = np.asarray(extents, dtype=float) / 2.0
    points = []
    for axis in range(3):
        for sign in (-1.0, 1.0):
            p = rng.uniform(-half, half, size=(per_face, 3))
            p[:, axis] = sign * half[axis]
            points.append(p)
    return PointCloud(np.vstack(points))
