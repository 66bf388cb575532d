from typing import Optional, Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from stableplace.services.geometry.types import RigidPose

_PARALLEL_TOLERANCE = 1e-12


def pose_delta(h1: RigidPose, h2: RigidPose) -> float:
    """Frobenius norm of the stacked 3×4 difference [R1 − R2 | T1 − T2]."""
    diff = np.hstack([h1.rotation - h2.rotation, (h1.translation - h2.translation)[:, None]])
    return float(np.linalg.norm(diff))


def unit(vector: Sequence[float]) -> np.ndarray:
    v = np.asarray(vector, dtype=float).reshape(3)
    length = np.linalg.norm(v)
    if length == 0.0:
        raise ValueError("Cannot normalize a zero vector")
    return v / length


def antipodal_axis(normal: np.ndarray) -> np.ndarray:
    """World x unless parallel to `normal`, then world y; projected perpendicular to it."""
    n = unit(normal)
    for candidate in (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])):
        if abs(candidate @ n) < 1.0 - 1e-9:
            axis = candidate - (candidate @ n) * n
            return axis / np.linalg.norm(axis)
    raise AssertionError("unreachable: x and y cannot both be parallel to a unit vector")


def align_vectors(src: Sequence[float], dst: Sequence[float], fallback_axis: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Minimal rotation mapping direction `src` onto direction `dst`.

    The axis is src × dst and the angle the one between them. When the two are
    antipodal the rotation is a half turn about `fallback_axis`, or about the
    world x axis (world y if x is parallel to `src`) projected perpendicular
    to `src`.
    """
    s, d = unit(src), unit(dst)
    cross = np.cross(s, d)
    sin = np.linalg.norm(cross)
    cos = float(s @ d)
    if sin < _PARALLEL_TOLERANCE:
        if cos > 0:
            return np.eye(3)
        axis = antipodal_axis(s) if fallback_axis is None else unit(fallback_axis)
        return Rotation.from_rotvec(np.pi * axis).as_matrix()
    angle = np.arctan2(sin, cos)
    return Rotation.from_rotvec(cross / sin * angle).as_matrix()


def rotation_angle_deg(rotation: np.ndarray) -> float:
    """Geodesic angle of a rotation matrix in degrees."""
    return float(np.degrees(Rotation.from_matrix(rotation).magnitude()))


def euler_rotation(angles: Sequence[float], degrees: bool = False) -> np.ndarray:
    """Extrinsic roll-pitch-yaw rotation."""
    return Rotation.from_euler("xyz", angles, degrees=degrees).as_matrix()
