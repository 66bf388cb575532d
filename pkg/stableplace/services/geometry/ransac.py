"""
RANSAC plane fitting and iterative multi-plane extraction.
"""

from typing import List, Tuple, Union

import numpy as np
from loguru import logger

from stableplace.core.constants import DEFAULT_RANSAC_ITERATIONS, DEFAULT_RANSAC_MAX_PLANES
from stableplace.core.exceptions import NoPlaneFound
from stableplace.services.geometry.types import PlaneModel, PointCloud

_CHUNK = 256


def _canonical_sign(normal: np.ndarray, offset: float) -> Tuple[np.ndarray, float]:
    """Make d < 0, or for planes through the origin make the dominant normal component positive."""
    if abs(offset) > 1e-12:
        if offset > 0:
            normal, offset = -normal, -offset
    elif normal[np.argmax(np.abs(normal))] < 0:
        normal, offset = -normal, -offset
    return normal, float(offset) + 0.0


def fit_plane_ransac(
    cloud: Union[PointCloud, np.ndarray],
    tolerance: float,
    iterations: int = DEFAULT_RANSAC_ITERATIONS,
    rng_seed: int = 0,
) -> PlaneModel:
    """
    Fit the plane supported by the most points.

    Every iteration draws a random triple of distinct points; collinear
    triples are skipped. The first plane reaching the maximum inlier count
    (|distance| ≤ tolerance) wins, so a fixed seed is bit-reproducible.

    Raises:
        NoPlaneFound: If no plane gathers at least 3 inliers
    """
    points = np.asarray(cloud.points if isinstance(cloud, PointCloud) else cloud, dtype=float)
    n = len(points)
    if n < 3:
        raise NoPlaneFound(f"RANSAC needs at least 3 points, got {n}", best_inliers=n)

    rng = np.random.default_rng(rng_seed)
    triples = rng.integers(0, n, size=(iterations, 3))
    distinct = (triples[:, 0] != triples[:, 1]) & (triples[:, 1] != triples[:, 2]) & (triples[:, 0] != triples[:, 2])
    triples = triples[distinct]

    scale = max(float(np.ptp(points, axis=0).max()), 1e-12)
    best_count, best_normal, best_offset = 0, None, 0.0
    for start in range(0, len(triples), _CHUNK):
        chunk = triples[start : start + _CHUNK]
        p0, p1, p2 = points[chunk[:, 0]], points[chunk[:, 1]], points[chunk[:, 2]]
        normals = np.cross(p1 - p0, p2 - p0)
        lengths = np.linalg.norm(normals, axis=1)
        valid = lengths > 1e-12 * scale * scale
        if not np.any(valid):
            continue
        normals = normals[valid] / lengths[valid, None]
        offsets = -np.einsum("ij,ij->i", normals, p0[valid])
        counts = (np.abs(points @ normals.T + offsets) <= tolerance).sum(axis=0)
        k = int(np.argmax(counts))
        if counts[k] > best_count:
            best_count, best_normal, best_offset = int(counts[k]), normals[k], float(offsets[k])

    if best_normal is None or best_count < 3:
        raise NoPlaneFound(f"Best plane has {best_count} inliers", best_inliers=best_count)

    normal, offset = _canonical_sign(best_normal, best_offset)
    inliers = np.flatnonzero(np.abs(points @ normal + offset) <= tolerance)
    return PlaneModel(normal=normal, offset=offset, inliers=inliers, tolerance=tolerance)


def segment_planes(
    cloud: Union[PointCloud, np.ndarray],
    tolerance: float,
    iterations: int = DEFAULT_RANSAC_ITERATIONS,
    rng_seed: int = 0,
    max_planes: int = DEFAULT_RANSAC_MAX_PLANES,
) -> List[PlaneModel]:
    """
    Extract up to `max_planes` planes by fitting and removing inliers in turn.

    Inlier indices refer to the input cloud; successive inlier sets are
    disjoint. Extraction stops early when fewer than 3 points remain or no
    plane is found.
    """
    points = np.asarray(cloud.points if isinstance(cloud, PointCloud) else cloud, dtype=float)
    remaining = np.arange(len(points))
    planes: List[PlaneModel] = []
    for k in range(max_planes):
        if len(remaining) < 3:
            break
        try:
            plane = fit_plane_ransac(points[remaining], tolerance, iterations, rng_seed + k)
        except NoPlaneFound:
            break
        planes.append(plane.with_inliers(remaining[plane.inliers]))
        remaining = np.delete(remaining, plane.inliers)
    logger.debug(f"Extracted {len(planes)} planes from {len(points)} points")
    return planes
