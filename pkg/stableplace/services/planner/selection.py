"""
Plane selection from per-point stability scores.

Points passing the stability threshold are grouped by mean shift (on
instance features when available), a RANSAC plane is fitted per group, and
planes are ranked by mean inlier score × inlier count.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger
from scipy.spatial import cKDTree

from stableplace.core.config import PlannerParams, RansacParams
from stableplace.core.exceptions import NoPlaneFound, NoStablePoints
from stableplace.services.geometry import PlaneModel, PointCloud, fit_plane_ransac
from stableplace.services.planner.mean_shift import mean_shift


@dataclass(frozen=True, eq=False)
class RankedPlane:
    plane: PlaneModel
    score: float
    cluster: int


@dataclass(frozen=True, eq=False)
class RankedPlanes:
    """Planes by non-increasing score; inlier indices refer to the scored cloud."""

    planes: List[RankedPlane] = field(default_factory=list)

    @property
    def best(self) -> int:
        return 0

    @property
    def best_plane(self) -> RankedPlane:
        return self.planes[0]

    def __len__(self) -> int:
        return len(self.planes)


def one_hot(labels: np.ndarray) -> np.ndarray:
    values, inverse = np.unique(np.asarray(labels), return_inverse=True)
    out = np.zeros((len(labels), len(values)))
    out[np.arange(len(labels)), inverse.reshape(-1)] = 1.0
    return out


def default_bandwidth(points: np.ndarray) -> float:
    """Twice the median nearest-neighbour distance."""
    if len(points) < 2:
        return 1.0
    distances, _ = cKDTree(points).query(points, k=2)
    median = float(np.median(distances[:, 1]))
    return 2.0 * median if median > 0 else 1e-9


def select_plane(
    scored: PointCloud,
    tau: Optional[float] = None,
    ransac: Optional[RansacParams] = None,
    params: Optional[PlannerParams] = None,
    seed: int = 0,
) -> RankedPlanes:
    """
    Rank candidate support planes of a scored cloud.

    Clustering runs on per-point features when present, on one-hot instance
    labels when only labels are present, and on coordinates otherwise.

    Raises:
        NoStablePoints: If fewer than 3 points score at least tau
        NoPlaneFound: If no cluster yields a plane
    """
    params = params or PlannerParams()
    ransac = ransac or RansacParams()
    tau = params.tau if tau is None else tau
    if scored.scores is None:
        raise NoStablePoints("Cloud carries no stability scores", passing=0, threshold=tau)

    keep = np.flatnonzero(scored.scores >= tau)
    if len(keep) < 3:
        raise NoStablePoints(f"{len(keep)} points score >= {tau}", passing=len(keep), threshold=tau)
    points = scored.points[keep]

    if scored.features is not None:
        data, bandwidth = scored.features[keep], params.bandwidth or params.feature_bandwidth
    elif scored.labels is not None:
        data, bandwidth = one_hot(scored.labels[keep]), params.bandwidth or params.feature_bandwidth
    else:
        data, bandwidth = points, params.bandwidth or default_bandwidth(points)
    labels = mean_shift(data, bandwidth, params.max_iter)

    tolerance = ransac.tolerance_for(scored.bounding_radius)
    ranked: List[RankedPlane] = []
    for cluster in np.unique(labels):
        members = np.flatnonzero(labels == cluster)
        if len(members) < 3:
            continue
        try:
            plane = fit_plane_ransac(points[members], tolerance, ransac.iterations, seed + int(cluster))
        except NoPlaneFound:
            continue
        inliers = keep[members[plane.inliers]]
        score = float(np.mean(scored.scores[inliers])) * len(inliers)
        ranked.append(RankedPlane(plane.with_inliers(inliers), score, int(cluster)))

    if not ranked:
        raise NoPlaneFound(f"None of {len(np.unique(labels))} clusters produced a plane", best_inliers=0)
    ranked.sort(key=lambda r: -r.score)
    logger.debug(f"Selected {len(ranked)} planes; best score {ranked[0].score:.2f}")
    return RankedPlanes(ranked)
