from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from stableplace.core.config import CameraConfig
from stableplace.core.exceptions import DegenerateInput
from stableplace.schemas.common import PoseRecord
from stableplace.schemas.view import CameraRecord
from stableplace.services.geometry import RigidPose, TriMesh, unit


@dataclass(frozen=True, eq=False)
class VirtualCamera:
    """
    Pinhole depth camera.

    `pose` maps camera coordinates to world coordinates with OpenCV axes:
    x right, y down, z along the optical axis.
    """

    pose: RigidPose
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise DegenerateInput(f"Focal lengths must be positive, got ({self.fx}, {self.fy})")
        if self.width < 16 or self.height < 16:
            raise DegenerateInput(f"Resolution must be at least 16x16, got {self.width}x{self.height}")

    @classmethod
    def look_at(
        cls,
        eye: Sequence[float],
        target: Sequence[float],
        width: int,
        height: int,
        fov_deg: float,
        up: Sequence[float] = (0.0, 0.0, 1.0),
    ) -> "VirtualCamera":
        eye = np.asarray(eye, dtype=float)
        forward = unit(np.asarray(target, dtype=float) - eye)
        up = np.asarray(up, dtype=float)
        if np.linalg.norm(np.cross(forward, up)) < 1e-6:
            up = np.array([0.0, 1.0, 0.0]) if abs(forward[1]) < 0.9 else np.array([1.0, 0.0, 0.0])
        right = unit(np.cross(forward, up))
        down = np.cross(forward, right)
        rotation = np.column_stack([right, down, forward])
        focal = 0.5 * height / np.tan(np.radians(fov_deg) / 2.0)
        return cls(RigidPose(rotation, eye), focal, focal, (width - 1) / 2.0, (height - 1) / 2.0, width, height)

    @property
    def center(self) -> np.ndarray:
        return self.pose.translation

    @property
    def forward(self) -> np.ndarray:
        return self.pose.rotation[:, 2]

    def pixel_rays(self) -> np.ndarray:
        """(H·W, 3) unit world directions, row-major over pixels."""
        u, v = np.meshgrid(np.arange(self.width, dtype=float), np.arange(self.height, dtype=float))
        local = np.stack(
            [(u.reshape(-1) - self.cx) / self.fx, (v.reshape(-1) - self.cy) / self.fy, np.ones(u.size)], axis=1
        )
        world = local @ self.pose.rotation.T
        return world / np.linalg.norm(world, axis=1, keepdims=True)

    def to_record(self) -> CameraRecord:
        return CameraRecord(
            pose=PoseRecord.from_pose(self.pose),
            fx=float(self.fx),
            fy=float(self.fy),
            cx=float(self.cx),
            cy=float(self.cy),
            width=self.width,
            height=self.height,
        )

    @classmethod
    def from_record(cls, record: CameraRecord) -> "VirtualCamera":
        return cls(record.pose.to_pose(), record.fx, record.fy, record.cx, record.cy, record.width, record.height)


def sample_camera_poses(
    mesh: TriMesh,
    count: int,
    seed: int = 0,
    config: Optional[CameraConfig] = None,
) -> List[VirtualCamera]:
    """Cameras uniformly on a sphere around the mesh centroid, looking at it."""
    config = config or CameraConfig()
    rng = np.random.default_rng(seed)
    directions = rng.normal(size=(count, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    center = mesh.centroid
    radius = config.radius_factor * mesh.bounding_radius
    return [
        VirtualCamera.look_at(center + radius * d, center, config.width, config.height, config.fov_deg)
        for d in directions
    ]
