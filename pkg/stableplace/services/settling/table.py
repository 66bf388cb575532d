from dataclasses import dataclass

import numpy as np

from stableplace.core.constants import MAX_TILT_DEG, UNIT_TOLERANCE, WORLD_UP
from stableplace.core.exceptions import DegenerateInput
from stableplace.services.geometry.transforms import align_vectors


@dataclass(frozen=True, eq=False)
class TableConfig:
    """
    Infinite table plane through the world origin.

    Gravity is always −z; a tilted table has its normal rotated away from +z
    by `tilt_deg`, leaning towards `azimuth_deg` in the xy-plane.
    """

    normal: np.ndarray
    tilt_deg: float = 0.0
    azimuth_deg: float = 0.0

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float).reshape(3)
        if abs(np.linalg.norm(normal) - 1.0) > UNIT_TOLERANCE:
            raise DegenerateInput("Table normal must be unit length")
        if not 0.0 <= self.tilt_deg <= MAX_TILT_DEG:
            raise DegenerateInput(f"Table tilt {self.tilt_deg}° outside [0°, {MAX_TILT_DEG}°]")
        normal = normal.copy()
        normal.setflags(write=False)
        object.__setattr__(self, "normal", normal)

    @classmethod
    def flat(cls) -> "TableConfig":
        return cls(np.asarray(WORLD_UP, dtype=float), 0.0, 0.0)

    @classmethod
    def tilted(cls, tilt_deg: float, azimuth_deg: float = 0.0) -> "TableConfig":
        theta, phi = np.radians(tilt_deg), np.radians(azimuth_deg)
        normal = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        return cls(normal, float(tilt_deg), float(azimuth_deg))

    @property
    def is_tilted(self) -> bool:
        return self.tilt_deg > 0.0

    @property
    def gravity(self) -> np.ndarray:
        return -np.asarray(WORLD_UP, dtype=float)

    def rotation_from_level(self) -> np.ndarray:
        """World rotation taking the level table onto this one."""
        return align_vectors(WORLD_UP, self.normal)

    def heights(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal
