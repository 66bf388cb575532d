from typing import NamedTuple

import numpy as np

from stableplace.core.exceptions import NonPositiveVolume
from stableplace.services.geometry.types import TriMesh


class MassProperties(NamedTuple):
    volume: float
    com: np.ndarray


def mass_properties(mesh: TriMesh) -> MassProperties:
    """
    Volume and uniform-density center of mass of a closed mesh.

    Each face forms a tetrahedron with the origin; signed volumes sum to the
    enclosed volume and their centroids, weighted by volume, to the COM.

    Raises:
        OpenMesh: If the mesh is not watertight and consistently oriented
        NonPositiveVolume: If the faces point inward
    """
    mesh.require_watertight()
    tri = mesh.triangles
    v0, v1, v2 = tri[:, 0], tri[:, 1], tri[:, 2]
    signed = np.einsum("ij,ij->i", v0, np.cross(v1, v2)) / 6.0
    volume = float(signed.sum())
    if volume <= 0.0:
        raise NonPositiveVolume(f"Mesh encloses non-positive volume {volume:.3e}", volume=volume)
    com = (signed[:, None] * (v0 + v1 + v2)).sum(axis=0) / (4.0 * volume)
    return MassProperties(volume, com)
