import numpy as np
import trimesh

from stableplace.services.geometry.types import PointCloud, TriMesh


def voxel_downsample(cloud: PointCloud, voxel: float) -> PointCloud:
    """
    Replace the points of every occupied voxel by their centroid.

    Scores and features are averaged per voxel; a voxel keeps the label of
    its first member. Output order follows the sorted voxel keys.
    """
    if voxel <= 0:
        raise ValueError(f"Voxel size must be positive, got {voxel}")
    keys = np.floor(np.asarray(cloud.points) / voxel).astype(np.int64)
    _, first, inverse, counts = np.unique(keys, axis=0, return_index=True, return_inverse=True, return_counts=True)
    inverse = inverse.reshape(-1)

    def mean_per_voxel(values: np.ndarray) -> np.ndarray:
        sums = np.zeros((len(counts),) + values.shape[1:])
        np.add.at(sums, inverse, values)
        return sums / counts.reshape((-1,) + (1,) * (values.ndim - 1))

    return PointCloud(
        points=mean_per_voxel(np.asarray(cloud.points)),
        scores=None if cloud.scores is None else np.clip(mean_per_voxel(np.asarray(cloud.scores)), 0.0, 1.0),
        labels=None if cloud.labels is None else np.asarray(cloud.labels)[first],
        features=None if cloud.features is None else mean_per_voxel(np.asarray(cloud.features)),
    )


def sample_surface(mesh: TriMesh, count: int, seed: int = 0) -> PointCloud:
    """Area-weighted uniform samples of the mesh surface."""
    points, _ = trimesh.sample.sample_surface(mesh.to_trimesh(), count, seed=seed)
    return PointCloud(np.asarray(points, dtype=float))
