"""
Foundational geometric value types.

All types are frozen dataclasses over read-only numpy arrays, so values can be
shared across worker threads without copying.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
import trimesh

from stableplace.core.constants import UNIT_TOLERANCE
from stableplace.core.exceptions import DegenerateInput, OpenMesh


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PointCloud:
    """
    Ordered points with optional per-point attributes.

    Attributes:
        points: (N, 3) coordinates in meters
        scores: optional (N,) stability scores in [0, 1]
        labels: optional (N,) integer instance labels
        features: optional (N, F) per-point feature vectors
    """

    points: np.ndarray
    scores: Optional[np.ndarray] = None
    labels: Optional[np.ndarray] = None
    features: Optional[np.ndarray] = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3:
            raise DegenerateInput(f"Point array must be (N, 3), got {points.shape}", count=int(points.size))
        if len(points) == 0:
            raise DegenerateInput("Point cloud is empty", count=0)
        if not np.all(np.isfinite(points)):
            raise DegenerateInput("Point cloud has non-finite coordinates", count=len(points))
        object.__setattr__(self, "points", _readonly(points))

        n = len(points)
        if self.scores is not None:
            scores = np.asarray(self.scores, dtype=float).reshape(-1)
            if len(scores) != n:
                raise DegenerateInput(f"Score array has length {len(scores)}, expected {n}", count=n)
            if np.any(scores < 0.0) or np.any(scores > 1.0):
                raise DegenerateInput("Stability scores must lie in [0, 1]", count=n)
            object.__setattr__(self, "scores", _readonly(scores))
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
            if len(labels) != n:
                raise DegenerateInput(f"Label array has length {len(labels)}, expected {n}", count=n)
            object.__setattr__(self, "labels", _readonly(labels))
        if self.features is not None:
            features = np.asarray(self.features, dtype=float)
            if features.ndim == 1:
                features = features[:, None]
            if len(features) != n:
                raise DegenerateInput(f"Feature array has length {len(features)}, expected {n}", count=n)
            object.__setattr__(self, "features", _readonly(features))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def centroid(self) -> np.ndarray:
        return self.points.mean(axis=0)

    @property
    def bounding_radius(self) -> float:
        """Radius of the centroid-centred sphere enclosing every point."""
        return float(np.linalg.norm(self.points - self.centroid, axis=1).max())

    def take(self, indices: Sequence[int]) -> "PointCloud":
        """Subset of the cloud, attributes included."""
        idx = np.asarray(indices, dtype=np.int64)
        return PointCloud(
            points=self.points[idx],
            scores=None if self.scores is None else self.scores[idx],
            labels=None if self.labels is None else self.labels[idx],
            features=None if self.features is None else self.features[idx],
        )

    def with_points(self, points: np.ndarray) -> "PointCloud":
        return PointCloud(points=points, scores=self.scores, labels=self.labels, features=self.features)

    def with_attributes(
        self,
        scores: Optional[np.ndarray] = None,
        labels: Optional[np.ndarray] = None,
        features: Optional[np.ndarray] = None,
    ) -> "PointCloud":
        """Copy with the given attributes replaced; omitted ones are kept."""
        return PointCloud(
            points=self.points,
            scores=self.scores if scores is None else scores,
            labels=self.labels if labels is None else labels,
            features=self.features if features is None else features,
        )

    def transformed(self, pose: "RigidPose") -> "PointCloud":
        return self.with_points(pose.apply(self.points))


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Indexed triangle mesh; faces are counter-clockwise seen from outside."""

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        vertices = np.asarray(self.vertices, dtype=float)
        faces = np.asarray(self.faces, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            raise DegenerateInput(f"Vertex array must be (V, 3), got {vertices.shape}")
        if faces.ndim != 2 or faces.shape[1] != 3:
            raise DegenerateInput(f"Face array must be (F, 3), got {faces.shape}")
        if not np.all(np.isfinite(vertices)):
            raise DegenerateInput("Mesh has non-finite vertices", count=len(vertices))
        if len(faces) and (faces.min() < 0 or faces.max() >= len(vertices)):
            raise DegenerateInput("Face index out of range", count=len(vertices))
        object.__setattr__(self, "vertices", _readonly(vertices))
        object.__setattr__(self, "faces", _readonly(faces))

    @property
    def triangles(self) -> np.ndarray:
        """(F, 3, 3) corner coordinates per face."""
        return self.vertices[self.faces]

    @property
    def face_normals(self) -> np.ndarray:
        tri = self.triangles
        normals = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
        lengths = np.linalg.norm(normals, axis=1, keepdims=True)
        return normals / np.where(lengths > 0, lengths, 1.0)

    @property
    def face_areas(self) -> np.ndarray:
        tri = self.triangles
        return 0.5 * np.linalg.norm(np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0]), axis=1)

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def bounding_radius(self) -> float:
        return float(np.linalg.norm(self.vertices - self.centroid, axis=1).max())

    def bad_edge_count(self) -> int:
        """
        Count directed edges that break closed, consistent orientation.

        A closed consistently oriented mesh uses every directed edge once and
        its reverse exactly once.
        """
        if len(self.faces) == 0:
            return 1
        f = self.faces
        tails = np.concatenate([f[:, 0], f[:, 1], f[:, 2]])
        heads = np.concatenate([f[:, 1], f[:, 2], f[:, 0]])
        base = np.int64(len(self.vertices))
        codes = tails * base + heads
        unique, counts = np.unique(codes, return_counts=True)
        repeated = int(np.sum(counts > 1))
        reverse = heads * base + tails
        unmatched = int(np.sum(~np.isin(reverse, unique)))
        collapsed = int(np.sum(tails == heads))
        return repeated + unmatched + collapsed

    @property
    def is_watertight(self) -> bool:
        return self.bad_edge_count() == 0

    def require_watertight(self) -> None:
        bad = self.bad_edge_count()
        if bad:
            raise OpenMesh(f"Mesh is not watertight or not consistently oriented ({bad} bad edges)", bad_edges=bad)

    def transformed(self, pose: "RigidPose") -> "TriMesh":
        return TriMesh(pose.apply(self.vertices), self.faces)

    def translated(self, offset: Sequence[float]) -> "TriMesh":
        return TriMesh(self.vertices + np.asarray(offset, dtype=float), self.faces)

    def to_trimesh(self) -> trimesh.Trimesh:
        return trimesh.Trimesh(vertices=np.array(self.vertices), faces=np.array(self.faces), process=False)

    @classmethod
    def from_trimesh(cls, mesh: trimesh.Trimesh) -> "TriMesh":
        return cls(np.asarray(mesh.vertices, dtype=float), np.asarray(mesh.faces, dtype=np.int64))

    @classmethod
    def concatenate(cls, meshes: Iterable["TriMesh"]) -> "TriMesh":
        """Disjoint union; each part keeps its own closed surface."""
        vertices, faces, offset = [], [], 0
        for mesh in meshes:
            vertices.append(mesh.vertices)
            faces.append(mesh.faces + offset)
            offset += len(mesh.vertices)
        return cls(np.vstack(vertices), np.vstack(faces))


@dataclass(frozen=True, eq=False)
class RigidPose:
    """World pose H = [R | T] of an object; x_world = R x_object + T."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        rotation = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        translation = np.asarray(self.translation, dtype=float).reshape(3)
        if not np.allclose(rotation.T @ rotation, np.eye(3), atol=UNIT_TOLERANCE, rtol=0.0):
            raise DegenerateInput("Rotation matrix is not orthonormal")
        if abs(np.linalg.det(rotation) - 1.0) > UNIT_TOLERANCE:
            raise DegenerateInput("Rotation matrix must have determinant +1")
        if not np.all(np.isfinite(translation)):
            raise DegenerateInput("Translation has non-finite entries")
        object.__setattr__(self, "rotation", _readonly(rotation))
        object.__setattr__(self, "translation", _readonly(translation))

    @classmethod
    def identity(cls) -> "RigidPose":
        return cls(np.eye(3), np.zeros(3))

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.rotation.T + self.translation

    def compose(self, other: "RigidPose") -> "RigidPose":
        """self ∘ other: apply other first."""
        return RigidPose(self.rotation @ other.rotation, self.rotation @ other.translation + self.translation)

    def inverse(self) -> "RigidPose":
        return RigidPose(self.rotation.T, -self.rotation.T @ self.translation)

    def rotated_about(self, rotation: np.ndarray, pivot: np.ndarray) -> "RigidPose":
        """Apply a world rotation about a world pivot point."""
        pivot = np.asarray(pivot, dtype=float)
        return RigidPose(rotation @ self.rotation, rotation @ (self.translation - pivot) + pivot)

    def translated(self, offset: np.ndarray) -> "RigidPose":
        return RigidPose(self.rotation, self.translation + np.asarray(offset, dtype=float))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RigidPose):
            return NotImplemented
        return bool(np.array_equal(self.rotation, other.rotation) and np.array_equal(self.translation, other.translation))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class PlaneModel:
    """Plane a·x + b·y + c·z + d = 0 with its inlier set."""

    normal: np.ndarray
    offset: float
    inliers: np.ndarray
    tolerance: float

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float).reshape(3)
        if abs(np.linalg.norm(normal) - 1.0) > UNIT_TOLERANCE:
            raise DegenerateInput("Plane normal must be unit length")
        object.__setattr__(self, "normal", _readonly(normal))
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "inliers", _readonly(np.asarray(self.inliers, dtype=np.int64).reshape(-1)))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def coefficients(self) -> np.ndarray:
        """(a, b, c, d)."""
        return np.append(self.normal, self.offset)

    @property
    def inlier_count(self) -> int:
        return len(self.inliers)

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal + self.offset

    def with_inliers(self, inliers: np.ndarray) -> "PlaneModel":
        return PlaneModel(self.normal, self.offset, inliers, self.tolerance)


@dataclass(frozen=True, eq=False)
class ObbModel:
    """Oriented box; column k of `axes` has half-extent `half_extents[k]`."""

    center: np.ndarray
    axes: np.ndarray
    half_extents: np.ndarray

    def __post_init__(self):
        axes = np.asarray(self.axes, dtype=float).reshape(3, 3)
        if not np.allclose(axes.T @ axes, np.eye(3), atol=UNIT_TOLERANCE, rtol=0.0):
            raise DegenerateInput("Box axes are not orthonormal")
        object.__setattr__(self, "center", _readonly(np.asarray(self.center, dtype=float).reshape(3)))
        object.__setattr__(self, "axes", _readonly(axes))
        object.__setattr__(self, "half_extents", _readonly(np.asarray(self.half_extents, dtype=float).reshape(3)))

    def sorted_extents(self) -> np.ndarray:
        """Half-extents in descending order."""
        return np.sort(self.half_extents)[::-1]

    @property
    def volume(self) -> float:
        return float(8.0 * np.prod(self.half_extents))

    def contains(self, points: np.ndarray, tolerance: float = 1e-9) -> np.ndarray:
        local = (np.asarray(points, dtype=float) - self.center) @ self.axes
        return np.all(np.abs(local) <= self.half_extents + tolerance, axis=1)
