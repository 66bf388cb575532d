from typing import Optional, Sequence, Tuple

import numpy as np

from stableplace.core.config import PlannerParams, RansacParams
from stableplace.core.constants import WORLD_UP, Method
from stableplace.services.baselines.proposal import PlacementProposal
from stableplace.services.baselines.rpf import outward_normal
from stableplace.services.geometry import PointCloud
from stableplace.services.planner.rotation import placement_rotation
from stableplace.services.planner.selection import RankedPlanes, select_plane


def plan_placement(
    scored: PointCloud,
    table_normal: Sequence[float] = WORLD_UP,
    params: Optional[PlannerParams] = None,
    ransac: Optional[RansacParams] = None,
    seed: int = 0,
) -> Tuple[PlacementProposal, RankedPlanes]:
    """
    Placement from the best-ranked plane of a scored cloud.

    Raises:
        NoStablePoints: If fewer than 3 points pass the stability threshold
        NoPlaneFound: If no plane can be fitted
    """
    ranked = select_plane(scored, ransac=ransac, params=params, seed=seed)
    best = ranked.best_plane.plane
    centroid = scored.centroid
    return (
        PlacementProposal(
            method=Method.PLANNER,
            rotation=placement_rotation(best, centroid, table_normal),
            source_normal=outward_normal(best, centroid),
            confidence=float(np.mean(scored.scores[best.inliers])),
        ),
        ranked,
    )
