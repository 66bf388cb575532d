"""
Analytic test and desk objects.

Everything is returned as a closed, outward-oriented `TriMesh` in meters.
Composite objects (chair, mug) are disjoint unions of closed parts that touch
without sharing vertices.
"""

from typing import Optional, Sequence

import numpy as np
import trimesh
from scipy.spatial.transform import Rotation

from stableplace.services.geometry.types import RigidPose, TriMesh

_CYLINDER_SECTIONS = 32


def _centered(mesh: TriMesh) -> TriMesh:
    lo, hi = mesh.vertices.min(axis=0), mesh.vertices.max(axis=0)
    return mesh.translated(-(lo + hi) / 2.0)


def box(extents: Sequence[float], center: Sequence[float] = (0.0, 0.0, 0.0)) -> TriMesh:
    return TriMesh.from_trimesh(trimesh.creation.box(extents=np.asarray(extents, dtype=float))).translated(center)


def cube(size: float = 1.0) -> TriMesh:
    return box((size, size, size))


def cylinder(radius: float, height: float, sections: int = _CYLINDER_SECTIONS) -> TriMesh:
    """Regular-polygon cylinder along z, centered at the origin."""
    return TriMesh.from_trimesh(trimesh.creation.cylinder(radius=radius, height=height, sections=sections))


def rod(radius: float = 0.01, height: float = 0.08, sections: int = _CYLINDER_SECTIONS) -> TriMesh:
    return cylinder(radius, height, sections)


def icosphere(radius: float = 0.05, subdivisions: int = 2) -> TriMesh:
    return TriMesh.from_trimesh(trimesh.creation.icosphere(subdivisions=subdivisions, radius=radius))


def prism(polygon: Sequence[Sequence[float]], depth: float, kernel: Optional[Sequence[float]] = None) -> TriMesh:
    """
    Extrude a counter-clockwise simple polygon along +z.

    Caps are fans around `kernel`, a point from which the whole polygon is
    visible (the vertex mean when omitted, valid for convex polygons).
    """
    ring = np.asarray(polygon, dtype=float)
    m = len(ring)
    signed_area = 0.5 * np.sum(ring[:, 0] * np.roll(ring[:, 1], -1) - np.roll(ring[:, 0], -1) * ring[:, 1])
    if signed_area < 0:
        ring = ring[::-1]
    center = ring.mean(axis=0) if kernel is None else np.asarray(kernel, dtype=float)

    bottom = np.column_stack([ring, np.zeros(m)])
    top = np.column_stack([ring, np.full(m, depth)])
    vertices = np.vstack([bottom, top, [[center[0], center[1], 0.0]], [[center[0], center[1], depth]]])
    cb, ct = 2 * m, 2 * m + 1

    faces = []
    for i in range(m):
        j = (i + 1) % m
        faces.append((cb, j, i))
        faces.append((ct, m + i, m + j))
        faces.append((i, j, m + j))
        faces.append((i, m + j, m + i))
    return TriMesh(vertices, np.asarray(faces, dtype=np.int64))


def _stand_up(mesh: TriMesh) -> TriMesh:
    """Turn a prism built in the xy-plane so its profile lies in the xz-plane."""
    quarter = Rotation.from_euler("x", 90.0, degrees=True).as_matrix()
    return _centered(mesh.transformed(RigidPose(quarter, np.zeros(3))))


def wedge(base: float = 0.15, height: float = 0.05, depth: float = 0.05) -> TriMesh:
    """Isosceles triangular prism; the base face is the largest."""
    return _stand_up(prism([(0.0, 0.0), (base, 0.0), (base / 2.0, height)], depth))


def ramp(base: float = 0.15, height: float = 0.05, depth: float = 0.08) -> TriMesh:
    """Right-triangle prism."""
    return _stand_up(prism([(0.0, 0.0), (base, 0.0), (0.0, height)], depth))


def l_prism(arm: float = 0.1, thickness: float = 0.04, depth: float = 0.3) -> TriMesh:
    """L-shaped cross-section with equal arms, extruded along z."""
    polygon = [
        (0.0, 0.0),
        (arm, 0.0),
        (arm, thickness),
        (thickness, thickness),
        (thickness, arm),
        (0.0, arm),
    ]
    return _centered(prism(polygon, depth, kernel=(thickness / 2.0, thickness / 2.0)))


def t_block(bar: float = 0.12, bar_thickness: float = 0.03, stem: float = 0.03, stem_height: float = 0.09, depth: float = 0.04) -> TriMesh:
    """T-shaped cross-section standing in the xz-plane, bar on top."""
    w, s, h, t = bar / 2.0, stem / 2.0, stem_height, bar_thickness
    polygon = [(-s, 0.0), (s, 0.0), (s, h), (w, h), (w, h + t), (-w, h + t), (-w, h), (-s, h)]
    return _stand_up(prism(polygon, depth, kernel=(0.0, h + t / 2.0)))


def toy_chair(
    seat: float = 0.2,
    seat_thickness: float = 0.02,
    leg: float = 0.02,
    leg_height: float = 0.15,
    back_height: float = 0.2,
) -> TriMesh:
    """Seat on four corner legs with a backrest along one edge."""
    half = seat / 2.0
    inset = half - leg / 2.0 - 0.005
    seat_z = leg_height + seat_thickness / 2.0
    parts = [box((seat, seat, seat_thickness), (0.0, 0.0, seat_z))]
    for x in (-inset, inset):
        for y in (-inset, inset):
            parts.append(box((leg, leg, leg_height), (x, y, leg_height / 2.0)))
    back_z = leg_height + seat_thickness + back_height / 2.0
    parts.append(box((seat * 0.9, leg, back_height), (0.0, half - leg, back_z)))
    return _centered(TriMesh.concatenate(parts))


def mug(radius: float = 0.04, height: float = 0.1, handle: float = 0.015) -> TriMesh:
    """Cylinder body with a box handle touching its side."""
    body = cylinder(radius, height)
    grip = box((handle, handle, height * 0.6), (radius + handle / 2.0, 0.0, 0.0))
    return _centered(TriMesh.concatenate([body, grip]))


def plate(radius: float = 0.1, thickness: float = 0.015) -> TriMesh:
    return cylinder(radius, thickness)
