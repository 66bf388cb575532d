from typing import Sequence

import numpy as np

from stableplace.core.constants import WORLD_UP
from stableplace.services.baselines.rpf import outward_normal
from stableplace.services.geometry import PlaneModel, align_vectors


def placement_rotation(
    plane: PlaneModel,
    centroid: Sequence[float],
    table_normal: Sequence[float] = WORLD_UP,
) -> np.ndarray:
    """
    Minimal rotation laying `plane` on the table.

    The plane normal is first flipped to point away from the centroid, then
    turned onto the negative table normal (half turn about world x, or y, when
    antipodal).
    """
    normal = outward_normal(plane, np.asarray(centroid, dtype=float))
    return align_vectors(normal, -np.asarray(table_normal, dtype=float))
