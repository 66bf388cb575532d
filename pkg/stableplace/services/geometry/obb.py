from typing import List, Tuple, Union

import numpy as np
from loguru import logger
from scipy.spatial import ConvexHull, QhullError

from stableplace.core.exceptions import DegenerateInput
from stableplace.services.geometry.hull import HullFacets, convex_hull
from stableplace.services.geometry.types import ObbModel, PointCloud, TriMesh

# eigenvalue gaps below this fraction of the largest leave the PCA frame undetermined
ISOTROPY_TOLERANCE = 0.1
_MAX_FACET_CANDIDATES = 24


def _box_in_frame(points: np.ndarray, axes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    local = points @ axes
    lo, hi = local.min(axis=0), local.max(axis=0)
    return axes @ ((lo + hi) / 2.0), (hi - lo) / 2.0


def _sorted_frame(axes: np.ndarray, half_extents: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-half_extents, kind="stable")
    axes = axes[:, order].copy()
    if np.linalg.det(axes) < 0:
        axes[:, 2] = -axes[:, 2]
    return axes, half_extents[order]


def _facet_frames(hull: TriMesh) -> List[np.ndarray]:
    """Frames with one axis on a hull facet normal and the others on a minimum-area rectangle."""
    facets = HullFacets(hull)
    vertices = np.asarray(hull.vertices)
    frames = []
    for k in np.argsort(-facets.areas, kind="stable")[:_MAX_FACET_CANDIDATES]:
        n = facets.normals[k]
        u = np.cross(n, [1.0, 0.0, 0.0])
        if np.linalg.norm(u) < 1e-6:
            u = np.cross(n, [0.0, 1.0, 0.0])
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        planar = np.column_stack([vertices @ u, vertices @ w])
        try:
            ring = planar[ConvexHull(planar).vertices]
        except QhullError:
            continue
        best_area, best_dir = np.inf, None
        for a, b in zip(ring, np.roll(ring, -1, axis=0)):
            edge = b - a
            length = np.linalg.norm(edge)
            if length == 0:
                continue
            e = edge / length
            along = planar @ e
            across = planar @ np.array([-e[1], e[0]])
            area = np.ptp(along) * np.ptp(across)
            if area < best_area:
                best_area, best_dir = area, e
        if best_dir is None:
            continue
        x = best_dir[0] * u + best_dir[1] * w
        frames.append(np.column_stack([x, np.cross(n, x), n]))
    return frames


def pca_obb(cloud: Union[PointCloud, np.ndarray]) -> ObbModel:
    """
    Oriented bounding box from the principal axes of the cloud's convex hull.

    Axes are the covariance eigenvectors of the hull vertices, ordered by
    decreasing variance and made right-handed; the box is the tight extent of
    all input points along them. When two eigenvalues nearly coincide the
    eigenvectors are not determined by the data, and the frame is replaced by
    the smallest-volume box among the PCA frame and hull-facet-aligned frames.

    Raises:
        DegenerateInput: On fewer than 4 points or a rank-deficient covariance
    """
    points = np.asarray(cloud.points if isinstance(cloud, PointCloud) else cloud, dtype=float)
    if len(points) < 4:
        raise DegenerateInput(f"OBB needs at least 4 points, got {len(points)}", count=len(points))
    hull = convex_hull(points)
    vertices = np.asarray(hull.vertices)
    centered = vertices - vertices.mean(axis=0)
    covariance = centered.T @ centered / len(vertices)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    if eigenvalues[0] <= eigenvalues[-1] * 1e-12:
        raise DegenerateInput("Hull covariance is rank deficient", rank=int(np.sum(eigenvalues > 0)))

    order = np.argsort(eigenvalues)[::-1]
    spectrum = eigenvalues[order]
    axes = eigenvectors[:, order]
    if np.linalg.det(axes) < 0:
        axes[:, 2] = -axes[:, 2]
    center, half_extents = _box_in_frame(points, axes)

    if np.min(-np.diff(spectrum)) < ISOTROPY_TOLERANCE * spectrum[0]:
        best_volume = float(np.prod(half_extents))
        for frame in _facet_frames(hull):
            c, h = _box_in_frame(points, frame)
            if np.prod(h) < best_volume * (1.0 - 1e-9):
                best_volume = float(np.prod(h))
                axes, half_extents = _sorted_frame(frame, h)
                center = c
        logger.debug(f"Near-isotropic hull spectrum {spectrum.round(6).tolist()}, using minimum-volume frame")

    return ObbModel(center=center, axes=axes, half_extents=half_extents)
