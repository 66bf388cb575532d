from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger

from stableplace.core.config import CameraConfig
from stableplace.core.constants import DEFAULT_FIXED_POINTS
from stableplace.core.exceptions import EmptyView
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.schemas.view import VisiblePlane
from stableplace.services.annotation import record_planes
from stableplace.services.geometry import PointCloud, TriMesh, voxel_downsample
from stableplace.services.planner.oracle import VisiblePlaneLabel, transfer_labels
from stableplace.services.viewsynth.camera import VirtualCamera
from stableplace.services.viewsynth.raycast import cast_rays


def render_partial(mesh: TriMesh, camera: VirtualCamera) -> PointCloud:
    """
    Camera-visible surface points, one per pixel whose ray hits the mesh.

    Raises:
        EmptyView: If no ray hits the mesh
    """
    directions = camera.pixel_rays()
    distance, _ = cast_rays(camera.center, directions, mesh.triangles)
    hit = np.isfinite(distance)
    if not hit.any():
        raise EmptyView(f"None of {len(directions)} camera rays hit the mesh", rays=len(directions))
    points = camera.center + directions[hit] * distance[hit, None]
    logger.debug(f"Rendered {int(hit.sum())}/{len(directions)} pixels")
    return PointCloud(points)


def sample_fixed(cloud: PointCloud, count: int = DEFAULT_FIXED_POINTS, seed: int = 0) -> PointCloud:
    """Exactly `count` points; without replacement when the cloud is large enough."""
    rng = np.random.default_rng(seed)
    replace = len(cloud) < count
    return cloud.take(rng.choice(len(cloud), size=count, replace=replace))


@dataclass(frozen=True, eq=False)
class SynthesizedView:
    cloud: PointCloud
    camera: VirtualCamera
    labels: List[VisiblePlaneLabel] = field(default_factory=list)

    def visible_planes(self) -> List[VisiblePlane]:
        return [
            VisiblePlane(
                plane_index=label.plane_index,
                normal=[float(v) for v in label.normal],
                support_points=[int(i) for i in label.support],
                normal_error_deg=float(label.normal_error_deg),
            )
            for label in self.labels
        ]


def synthesize_view(
    mesh: TriMesh,
    camera: VirtualCamera,
    record: Optional[AnnotationRecord] = None,
    config: Optional[CameraConfig] = None,
    band: Optional[float] = None,
) -> SynthesizedView:
    """
    Partial view of `mesh` with oracle plane labels.

    Rendered points are voxel-downsampled (voxel = `voxel_ratio` × bounding
    radius). Labels are transferred from `record` when given.

    Raises:
        EmptyView: If the camera does not see the mesh
    """
    config = config or CameraConfig()
    cloud = voxel_downsample(render_partial(mesh, camera), config.voxel_ratio * mesh.bounding_radius)
    labels: List[VisiblePlaneLabel] = []
    if record is not None and record.planes:
        planes = record_planes(record, mesh)
        labels = transfer_labels(cloud, mesh, planes) if band is None else transfer_labels(cloud, mesh, planes, band)
    return SynthesizedView(cloud, camera, labels)
