"""
Constants and default values for the stableplace toolkit.
"""

from enum import Enum
from typing import Final

TOOL_NAME: Final[str] = "stableplace"
TOOL_VERSION: Final[str] = "0.3.0"
ENV_PREFIX: Final[str] = "STABLEPLACE_"

# Geometric tolerances (meters unless noted)
DEDUP_TOLERANCE: Final[float] = 1e-12
HULL_TOLERANCE: Final[float] = 1e-9
COPLANAR_TOLERANCE: Final[float] = 1e-9
UNIT_TOLERANCE: Final[float] = 1e-9
COM_MARGIN: Final[float] = 1e-9
CONTACT_TOLERANCE: Final[float] = 1e-8
FLUSH_COS_TOLERANCE: Final[float] = 1e-9

# Table
WORLD_UP: Final[tuple] = (0.0, 0.0, 1.0)
MAX_TILT_DEG: Final[float] = 45.0
VERIFY_TILT_DEG: Final[float] = 10.0
VERIFY_AZIMUTHS: Final[int] = 8

# Settling defaults (pose_delta units)
DEFAULT_EPSILON: Final[float] = 1e-4
DEFAULT_EPSILON1: Final[float] = 1e-3
DEFAULT_EPSILON2: Final[float] = 1e-3
DEFAULT_WINDOW: Final[int] = 10
DEFAULT_MAX_STEPS: Final[int] = 200
DEFAULT_ROLLING_ANGLE_DEG: Final[float] = 5.0
ROLLING_MOVEMENT_FACTOR: Final[float] = 2.0
DEFAULT_DROP_CLEARANCE: Final[float] = 0.5

# Annotation
DEFAULT_SUBDIVISIONS: Final[int] = 8
DEFAULT_CLUSTER_EPS_DEG: Final[float] = 10.0
DEFAULT_CLUSTER_MIN_PTS: Final[int] = 3
DEFAULT_SUPPORT_BAND: Final[float] = 0.05
SUPPORT_TRANSFER_TOLERANCE: Final[float] = 0.005
VIEW_MIN_SUPPORT_POINTS: Final[int] = 3
VIEW_MAX_NORMAL_ERROR_DEG: Final[float] = 10.0
NO_STABLE_PLANES_NOTE: Final[str] = "no stable planes"

# RANSAC / planner
DEFAULT_RANSAC_ITERATIONS: Final[int] = 1024
DEFAULT_RANSAC_TOLERANCE_RATIO: Final[float] = 0.005
DEFAULT_RANSAC_MAX_PLANES: Final[int] = 8
DEFAULT_STABILITY_THRESHOLD: Final[float] = 0.5
DEFAULT_FEATURE_BANDWIDTH: Final[float] = 0.5
DEFAULT_MEAN_SHIFT_MAX_ITER: Final[int] = 300

# View synthesis
DEFAULT_FIXED_POINTS: Final[int] = 2048
DEFAULT_CAMERA_WIDTH: Final[int] = 160
DEFAULT_CAMERA_HEIGHT: Final[int] = 120
DEFAULT_CAMERA_FOV_DEG: Final[float] = 60.0
DEFAULT_CAMERA_RADIUS_FACTOR: Final[float] = 2.5
DEFAULT_VIEWS: Final[int] = 16
DEFAULT_VOXEL_RATIO: Final[float] = 0.01
MIN_RESOLUTION: Final[int] = 16

# Benchmark
DEFAULT_TRIALS: Final[int] = 100
DEFAULT_SUCCESS_DEG: Final[float] = 10.0
METERS_TO_CM: Final[float] = 100.0

# Logging
DEFAULT_LOG_LEVEL: Final[str] = "INFO"
DEFAULT_LOG_ROTATION: Final[str] = "10 MB"
DEFAULT_LOG_RETENTION: Final[str] = "30 days"

# Files
MESH_SUFFIXES: Final[tuple] = (".obj", ".ply")
CLOUD_SUFFIXES: Final[tuple] = (".ply", ".xyz", ".txt")


class Method(str, Enum):
    """Placement methods known to the benchmark."""

    CHSA = "chsa"
    BBF = "bbf"
    RPF = "rpf"
    PLANNER = "planner"


class Regime(str, Enum):
    """Point-cloud regime of a benchmark run."""

    WHOLE = "whole"
    PARTIAL = "partial"
