"""
Oracle stability labels for point clouds of annotated objects.

A cloud point supports an annotated plane when, with the object resting on
that plane, it lies within the plane's support band (the same height band as
the mesh mask) plus a transfer tolerance. A plane is visible in a cloud only
when at least 3 points support it and the plane refitted to them stays close
to the annotated normal.
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from stableplace.core.constants import (
    DEFAULT_SUPPORT_BAND,
    SUPPORT_TRANSFER_TOLERANCE,
    VIEW_MAX_NORMAL_ERROR_DEG,
    VIEW_MIN_SUPPORT_POINTS,
)
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.services.annotation import StablePlane, record_planes, support_heights
from stableplace.services.annotation.support import band_limit
from stableplace.services.geometry import PointCloud, TriMesh


@dataclass(frozen=True, eq=False)
class VisiblePlaneLabel:
    plane_index: int
    normal: np.ndarray
    support: np.ndarray
    normal_error_deg: float


def refit_normal_error_deg(points: np.ndarray, normal: np.ndarray) -> float:
    """Angle between `normal` and the least-squares plane normal of `points`."""
    centered = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    if vt.shape[0] < 3:
        return 90.0
    return float(np.degrees(np.arccos(np.clip(abs(vt[2] @ normal), 0.0, 1.0))))


def transfer_labels(
    cloud: PointCloud,
    mesh: TriMesh,
    planes: Sequence[StablePlane],
    band: float = DEFAULT_SUPPORT_BAND,
    tolerance: float = SUPPORT_TRANSFER_TOLERANCE,
    min_points: int = VIEW_MIN_SUPPORT_POINTS,
    max_error_deg: float = VIEW_MAX_NORMAL_ERROR_DEG,
) -> List[VisiblePlaneLabel]:
    """Planes supervised by `cloud`, which must be in the object frame."""
    labels = []
    for index, plane in enumerate(planes):
        limit = band_limit(support_heights(mesh.vertices, plane.normal), band) + tolerance
        support = np.flatnonzero(support_heights(cloud.points, plane.normal) <= limit)
        if len(support) < min_points:
            continue
        error = refit_normal_error_deg(cloud.points[support], plane.normal)
        if error > max_error_deg:
            continue
        labels.append(VisiblePlaneLabel(index, plane.normal, support, error))
    return labels


def oracle_scores(
    cloud: PointCloud,
    mesh: TriMesh,
    record: AnnotationRecord,
    band: float = DEFAULT_SUPPORT_BAND,
) -> PointCloud:
    """
    Scored cloud from annotations: score 1 on visible support, 0 elsewhere.

    Features are multi-hot plane memberships, one column per annotated plane.
    """
    planes = record_planes(record, mesh)
    scores = np.zeros(len(cloud))
    features = np.zeros((len(cloud), max(len(planes), 1)))
    for label in transfer_labels(cloud, mesh, planes, band):
        scores[label.support] = 1.0
        features[label.support, label.plane_index] = 1.0
    return cloud.with_attributes(scores=scores, features=features)
