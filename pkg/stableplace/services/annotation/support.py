import numpy as np

from stableplace.core.constants import DEFAULT_SUPPORT_BAND
from stableplace.core.exceptions import DegenerateExtent
from stableplace.services.geometry import TriMesh, unit


def support_heights(points: np.ndarray, direction: np.ndarray) -> np.ndarray:
    """Height of object-frame points above the table when `direction` points into it."""
    return -(np.asarray(points, dtype=float) @ unit(direction))


def band_limit(heights: np.ndarray, band: float) -> float:
    lo, hi = float(heights.min()), float(heights.max())
    extent = hi - lo
    if extent <= 1e-12:
        raise DegenerateExtent("Object has zero extent along the query direction", extent=extent)
    return lo + band * extent


def extract_support_mask(mesh: TriMesh, direction: np.ndarray, band: float = DEFAULT_SUPPORT_BAND) -> np.ndarray:
    """
    Vertices in the lowest `band` fraction of the height when resting on `direction`.

    Raises:
        DegenerateExtent: If the mesh is flat along `direction`
    """
    heights = support_heights(mesh.vertices, direction)
    return heights <= band_limit(heights, band)
