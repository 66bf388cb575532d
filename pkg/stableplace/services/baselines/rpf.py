from typing import Optional, Sequence

import numpy as np
from loguru import logger

from stableplace.core.config import RansacParams
from stableplace.core.constants import WORLD_UP, Method
from stableplace.core.exceptions import NoPlaneFound
from stableplace.services.baselines.proposal import PlacementProposal
from stableplace.services.geometry import PlaneModel, PointCloud, align_vectors, segment_planes


def outward_normal(plane: PlaneModel, centroid: np.ndarray) -> np.ndarray:
    """Plane normal flipped to point away from the side holding `centroid`."""
    return -plane.normal if plane.signed_distance(centroid[None, :])[0] > 0 else plane.normal


def rpf(
    cloud: PointCloud,
    tolerance: Optional[float] = None,
    iterations: Optional[int] = None,
    seed: int = 0,
    params: Optional[RansacParams] = None,
    table_normal: Sequence[float] = WORLD_UP,
) -> PlacementProposal:
    """
    RANSAC plane fitting: put the object down on its best-supported plane.

    Planes are extracted one after another (fit, remove inliers) up to
    `params.max_planes`; the plane with the most inliers faces down.

    Raises:
        NoPlaneFound: If no plane gathers 3 inliers
    """
    params = params or RansacParams()
    tolerance = tolerance if tolerance is not None else params.tolerance_for(cloud.bounding_radius)
    iterations = iterations if iterations is not None else params.iterations
    planes = segment_planes(cloud, tolerance, iterations, seed, params.max_planes)
    if not planes:
        raise NoPlaneFound("RPF found no plane", best_inliers=0)

    best = max(range(len(planes)), key=lambda i: (planes[i].inlier_count, -i))
    normal = outward_normal(planes[best], cloud.centroid)
    logger.debug(f"RPF: {len(planes)} planes, best has {planes[best].inlier_count}/{len(cloud)} inliers")
    return PlacementProposal(
        method=Method.RPF,
        rotation=align_vectors(normal, -np.asarray(table_normal, dtype=float)),
        source_normal=normal,
        confidence=planes[best].inlier_count / len(cloud),
    )
