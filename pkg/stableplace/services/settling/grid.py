from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from loguru import logger

from stableplace.core.config import SettleParams
from stableplace.core.constants import DEFAULT_SUBDIVISIONS
from stableplace.services.geometry import RigidPose, TriMesh
from stableplace.services.geometry.transforms import euler_rotation
from stableplace.services.settling.body import PreparedBody, prepare_body
from stableplace.services.settling.simulator import SettleOutcome, settle_body
from stableplace.services.settling.table import TableConfig


def grid_orientations(subdivisions: int = DEFAULT_SUBDIVISIONS) -> List[np.ndarray]:
    """Roll-pitch-yaw cell centres of a subdivisions³ grid over [0, 2π)³, roll slowest."""
    if subdivisions < 1:
        raise ValueError(f"subdivisions must be >= 1, got {subdivisions}")
    centres = (np.arange(subdivisions) + 0.5) * (2.0 * np.pi / subdivisions)
    return [euler_rotation((roll, pitch, yaw)) for roll in centres for pitch in centres for yaw in centres]


def release_pose(body: PreparedBody, rotation: np.ndarray, table: TableConfig, clearance: float) -> RigidPose:
    """Pose with the COM above the table origin, every point at least `clearance` up."""
    translation = -rotation @ body.com + np.asarray(table.normal) * (body.radius + clearance)
    return RigidPose(rotation, translation)


def drop_grid(
    mesh: TriMesh,
    params: Optional[SettleParams] = None,
    subdivisions: int = DEFAULT_SUBDIVISIONS,
    table: Optional[TableConfig] = None,
    workers: int = 1,
    body: Optional[PreparedBody] = None,
) -> List[SettleOutcome]:
    """
    Settle the object from every orientation of the Euler grid.

    Results are in grid order regardless of `workers`.

    Raises:
        OpenMesh: If the mesh is not watertight
    """
    params = params or SettleParams()
    table = table or TableConfig.flat()
    body = body or prepare_body(mesh)
    starts = [release_pose(body, R, table, params.drop_clearance) for R in grid_orientations(subdivisions)]

    def run(start: RigidPose) -> SettleOutcome:
        return settle_body(body, start, table, params)[0]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = [run(start) for start in starts]

    stable = sum(1 for o in outcomes if o.stable)
    logger.info(f"Drop grid: {len(outcomes)} drops, {stable} stable")
    return outcomes
