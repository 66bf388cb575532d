"""
Convex hulls and their polygonal facet structure.

`convex_hull` wraps Qhull (quickhull) and returns an outward-oriented,
watertight triangle mesh. `HullFacets` merges coplanar hull triangles into
polygons, which is the representation the settling simulator and CHSA walk.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import numpy as np
from loguru import logger
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import ConvexHull, QhullError

from stableplace.core.constants import COPLANAR_TOLERANCE, DEDUP_TOLERANCE
from stableplace.core.exceptions import DegenerateInput
from stableplace.services.geometry.types import PointCloud, TriMesh

_NORMAL_COS_TOLERANCE = 1e-9


def _as_points(source: Union[PointCloud, TriMesh, np.ndarray]) -> np.ndarray:
    if isinstance(source, PointCloud):
        return np.asarray(source.points)
    if isinstance(source, TriMesh):
        return np.asarray(source.vertices)
    return np.asarray(source, dtype=float).reshape(-1, 3)


def weld_points(points: np.ndarray, tolerance: float = DEDUP_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Deduplicate points on a `tolerance` grid.

    Returns the unique points in lexicographic order and, for every input
    point, the index of its representative.
    """
    keys = np.round(np.asarray(points, dtype=float) / tolerance).astype(np.int64)
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    return np.asarray(points, dtype=float)[first], inverse.reshape(-1)


def affine_rank(points: np.ndarray) -> int:
    centered = points - points.mean(axis=0)
    if len(points) < 2:
        return 0
    singular = np.linalg.svd(centered, compute_uv=False)
    scale = max(float(singular[0]), 1e-300)
    return int(np.sum(singular > scale * 1e-10))


def convex_hull(cloud: Union[PointCloud, TriMesh, np.ndarray]) -> TriMesh:
    """
    Convex hull of a point set as an outward-oriented triangle mesh.

    Duplicate points are welded at 1e-12 m first; hull vertices come back in
    lexicographic order, so hulling a hull's vertices is the identity.

    Raises:
        DegenerateInput: If fewer than 4 distinct points or all coplanar
    """
    points = _as_points(cloud)
    unique, _ = weld_points(points)
    if len(unique) < 4:
        raise DegenerateInput(f"Convex hull needs 4 distinct points, got {len(unique)}", count=len(unique))
    rank = affine_rank(unique)
    if rank < 3:
        raise DegenerateInput(f"Points span only {rank} dimensions", rank=rank, count=len(unique))

    try:
        hull = ConvexHull(unique)
    except QhullError as e:
        raise DegenerateInput(f"Qhull failed: {e}", rank=rank, count=len(unique)) from e

    simplices = hull.simplices.astype(np.int64).copy()
    tri = unique[simplices]
    normals = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    flip = np.einsum("ij,ij->i", normals, hull.equations[:, :3]) < 0
    simplices[flip] = simplices[flip][:, [0, 2, 1]]

    used = np.unique(simplices)
    remap = np.full(len(unique), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return TriMesh(unique[used], remap[simplices])


@dataclass(frozen=True, eq=False)
class HullFacet:
    """Planar polygon of a convex hull; `loop` is counter-clockwise about `normal`."""

    index: int
    normal: np.ndarray
    offset: float
    loop: np.ndarray
    area: float


class HullFacets:
    """
    Polygonal facets of a convex, outward-oriented mesh.

    Adjacent triangles whose planes coincide are merged, so a cube has 6
    facets and a cylinder cap is a single polygon.
    """

    def __init__(self, mesh: TriMesh):
        mesh.require_watertight()
        self.vertices = np.asarray(mesh.vertices)
        faces = np.asarray(mesh.faces)
        tri = self.vertices[faces]
        raw = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        twice_area = np.linalg.norm(raw, axis=1)
        tri_normals = raw / np.where(twice_area > 0, twice_area, 1.0)[:, None]
        scale = max(float(np.abs(self.vertices).max()), 1.0)

        edge_owner: Dict[Tuple[int, int], int] = {}
        for t, (a, b, c) in enumerate(faces):
            for u, v in ((a, b), (b, c), (c, a)):
                edge_owner[(int(u), int(v))] = t

        rows, cols = [], []
        for t, (a, b, c) in enumerate(faces):
            for u, v in ((a, b), (b, c), (c, a)):
                s = edge_owner[(int(v), int(u))]
                if s <= t:
                    continue
                opposite = self.vertices[[w for w in faces[s] if w != u and w != v][0]]
                same_plane = abs(tri_normals[t] @ (opposite - tri[t, 0])) <= COPLANAR_TOLERANCE * scale
                if same_plane and tri_normals[t] @ tri_normals[s] > 1.0 - _NORMAL_COS_TOLERANCE:
                    rows.append(t)
                    cols.append(s)

        n_tri = len(faces)
        graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n_tri, n_tri))
        n_facets, labels = connected_components(graph, directed=False)

        self.facets: List[HullFacet] = []
        self._edge_facet: Dict[Tuple[int, int], int] = {}
        for k in range(n_facets):
            members = np.flatnonzero(labels == k)
            weights = twice_area[members]
            normal = (tri_normals[members] * weights[:, None]).sum(axis=0)
            normal /= np.linalg.norm(normal)
            loop = self._boundary_loop(faces[members])
            offset = float(np.mean(self.vertices[loop] @ normal))
            self.facets.append(HullFacet(k, normal, offset, loop, float(0.5 * weights.sum())))
            for u, v in zip(loop, np.roll(loop, -1)):
                self._edge_facet[(int(u), int(v))] = k

        self.normals = np.array([f.normal for f in self.facets])
        self.offsets = np.array([f.offset for f in self.facets])
        self.areas = np.array([f.area for f in self.facets])
        logger.debug(f"Merged {n_tri} hull triangles into {n_facets} facets")

    @staticmethod
    def _boundary_loop(group: np.ndarray) -> np.ndarray:
        directed = set()
        for a, b, c in group:
            directed.update({(int(a), int(b)), (int(b), int(c)), (int(c), int(a))})
        successor = {u: v for (u, v) in directed if (v, u) not in directed}
        start = min(successor)
        loop = [start]
        current = successor[start]
        while current != start:
            loop.append(current)
            current = successor[current]
            if len(loop) > len(successor):
                raise DegenerateInput("Facet boundary is not a simple loop")
        return np.asarray(loop, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.facets)

    def __getitem__(self, index: int) -> HullFacet:
        return self.facets[index]

    def neighbor(self, facet_index: int, edge: Tuple[int, int]) -> int:
        """Facet across the directed boundary edge (u, v) of `facet_index`."""
        u, v = edge
        return self._edge_facet[(int(v), int(u))]

    def loop_edges(self, facet_index: int) -> List[Tuple[int, int]]:
        loop = self.facets[facet_index].loop
        return [(int(u), int(v)) for u, v in zip(loop, np.roll(loop, -1))]

    def exit_facet(self, origin: np.ndarray, direction: np.ndarray) -> int:
        """
        Facet through which the ray origin + t·direction (t ≥ 0) leaves the hull.

        `origin` must be inside the hull. Ties go to the lowest facet index.
        """
        direction = np.asarray(direction, dtype=float)
        along = self.normals @ direction
        valid = along > 1e-12
        distance = np.full(len(self.facets), np.inf)
        distance[valid] = (self.offsets[valid] - self.normals[valid] @ np.asarray(origin, dtype=float)) / along[valid]
        return int(np.argmin(distance))

    def signed_edge_distances(self, facet_index: int, point: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Distances of an in-plane point to each boundary edge of a facet.

        Returns (signed, segment): signed is positive on the inner side of the
        edge's supporting line; segment is the Euclidean distance to the edge
        segment. Entry k belongs to edge loop[k] → loop[k+1].
        """
        facet = self.facets[facet_index]
        a = self.vertices[facet.loop]
        b = self.vertices[np.roll(facet.loop, -1)]
        edges = b - a
        lengths = np.linalg.norm(edges, axis=1)
        inward = np.cross(facet.normal, edges) / lengths[:, None]
        rel = np.asarray(point, dtype=float) - a
        signed = np.einsum("ij,ij->i", inward, rel)
        t = np.clip(np.einsum("ij,ij->i", rel, edges) / lengths**2, 0.0, 1.0)
        segment = np.linalg.norm(rel - t[:, None] * edges, axis=1)
        return signed, segment

    def flush_facet(self, down: np.ndarray, cos_tolerance: float = _NORMAL_COS_TOLERANCE) -> int:
        """Index of the facet whose outward normal matches `down`, or -1."""
        cos = self.normals @ np.asarray(down, dtype=float)
        best = int(np.argmax(cos))
        return best if cos[best] > 1.0 - cos_tolerance else -1
