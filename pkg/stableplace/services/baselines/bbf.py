from typing import Sequence

import numpy as np
from loguru import logger

from stableplace.core.constants import WORLD_UP, Method
from stableplace.services.baselines.proposal import PlacementProposal
from stableplace.services.geometry import PointCloud, align_vectors, pca_obb


def canonical_axis(axis: np.ndarray) -> np.ndarray:
    """Sign convention: the largest-magnitude component is positive."""
    axis = np.asarray(axis, dtype=float)
    return axis if axis[np.argmax(np.abs(axis))] > 0 else -axis


def bbf(cloud: PointCloud, table_normal: Sequence[float] = WORLD_UP) -> PlacementProposal:
    """
    Bounding-box fitting: lay the largest box face on the table.

    The box axis with the smallest half-extent, in canonical sign, is turned
    onto the table normal, so its opposite face points down. Confidence is the
    largest face's share of the box surface.

    Raises:
        DegenerateInput: If the cloud is flat or has fewer than 4 points
    """
    obb = pca_obb(cloud)
    k = int(np.argmin(obb.half_extents))
    axis = canonical_axis(obb.axes[:, k])
    e1, e2 = np.delete(obb.half_extents, k)
    e3 = obb.half_extents[k]
    confidence = 4.0 * e1 * e2 / (8.0 * (e1 * e2 + e1 * e3 + e2 * e3))
    logger.debug(f"BBF: half-extents {np.round(obb.half_extents, 5).tolist()}, thin axis {np.round(axis, 4).tolist()}")
    return PlacementProposal(
        method=Method.BBF,
        rotation=align_vectors(-axis, -np.asarray(table_normal, dtype=float)),
        source_normal=-axis,
        confidence=float(confidence),
    )
