from typing import Optional

import numpy as np
from loguru import logger

from stableplace.core.config import ClusterParams, SettleParams
from stableplace.services.geometry import align_vectors
from stableplace.services.annotation.plane import StablePlane
from stableplace.services.settling import PreparedBody, TableConfig, release_pose, settle_body


def tilt_verify(
    body: PreparedBody,
    plane: StablePlane,
    params: Optional[SettleParams] = None,
    cluster: Optional[ClusterParams] = None,
) -> bool:
    """
    Check that a candidate plane holds on a tilted table.

    The object starts resting on the plane; the table is tilted by
    `cluster.tilt_deg` towards each of `cluster.azimuths` evenly spaced
    directions. Every run must end with instability below epsilon2 and a final down direction
    within `cluster.eps_deg` of the plane normal.
    """
    params = params or SettleParams()
    cluster = cluster or ClusterParams()
    cos_limit = np.cos(np.radians(cluster.eps_deg))
    for k in range(cluster.azimuths):
        azimuth = 360.0 * k / cluster.azimuths
        table = TableConfig.tilted(cluster.tilt_deg, azimuth)
        rotation = align_vectors(plane.normal, -table.normal)
        outcome, _ = settle_body(body, release_pose(body, rotation, table, 0.0), table, params)
        if outcome.instability >= params.epsilon2 or float(outcome.down_direction @ plane.normal) < cos_limit:
            logger.debug(
                f"Plane {np.round(plane.normal, 4).tolist()} fails at azimuth {azimuth:.0f}°: "
                f"instability={outcome.instability:.3e} topples={outcome.topples}"
            )
            return False
    return True
