"""
Training-style point-cloud augmentation: rotation, shear, per-point jitter
and a global Gaussian offset, applied in that order.
"""

from typing import Optional

import numpy as np

from stableplace.core.config import AugmentConfig
from stableplace.services.geometry import PointCloud
from stableplace.services.geometry.transforms import euler_rotation


def augment(cloud: PointCloud, config: AugmentConfig, seed: Optional[int] = None) -> PointCloud:
    """
    Augmented copy of `cloud`; scores, labels and features are carried over.

    Rotation is about the cloud centroid. Jitter is Gaussian with sigma
    `jitter_sigma`, clipped to five sigma.
    """
    rng = np.random.default_rng(config.seed if seed is None else seed)
    points = np.array(cloud.points)
    center = points.mean(axis=0)

    if config.rotation_deg > 0:
        angles = rng.uniform(-config.rotation_deg, config.rotation_deg, size=3)
        points = (points - center) @ euler_rotation(angles, degrees=True).T + center
    if config.shear > 0:
        shear = np.eye(3)
        off_diagonal = ~np.eye(3, dtype=bool)
        shear[off_diagonal] = rng.uniform(-config.shear, config.shear, size=6)
        points = (points - center) @ shear.T + center
    if config.jitter_sigma > 0:
        limit = 5.0 * config.jitter_sigma
        points = points + np.clip(rng.normal(0.0, config.jitter_sigma, size=points.shape), -limit, limit)
    if config.noise_sigma > 0:
        points = points + rng.normal(0.0, config.noise_sigma, size=3)
    return cloud.with_points(points)
