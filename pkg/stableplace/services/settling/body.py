from dataclasses import dataclass

import numpy as np

from stableplace.services.geometry import HullFacets, TriMesh, convex_hull, mass_properties


@dataclass(frozen=True, eq=False)
class PreparedBody:
    """Object-frame quantities the settler needs, computed once per mesh."""

    mesh: TriMesh
    hull: TriMesh
    facets: HullFacets
    com: np.ndarray
    volume: float

    @property
    def hull_vertices(self) -> np.ndarray:
        return self.hull.vertices

    @property
    def radius(self) -> float:
        """Largest distance from the COM to a hull vertex."""
        return float(np.linalg.norm(self.hull.vertices - self.com, axis=1).max())


def prepare_body(mesh: TriMesh) -> PreparedBody:
    """
    Hull, facets and uniform-density COM of a watertight mesh.

    Raises:
        OpenMesh: If the mesh is not watertight
        NonPositiveVolume: If the mesh is inside-out
    """
    props = mass_properties(mesh)
    hull = convex_hull(mesh.vertices)
    return PreparedBody(mesh=mesh, hull=hull, facets=HullFacets(hull), com=props.com, volume=props.volume)
