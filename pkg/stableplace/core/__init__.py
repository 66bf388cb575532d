"""
Core module for the stableplace toolkit.

This module contains the foundational components including:
- Configuration management
- Logging setup
- Constants and enums
- Custom exception handling
"""

from .config import (
    AugmentConfig,
    BenchParams,
    CameraConfig,
    ClusterParams,
    PlannerParams,
    RansacParams,
    SettleParams,
    ToolConfig,
    build_config,
    get_settings,
    load_config,
)
from .constants import TOOL_NAME, TOOL_VERSION, Method, Regime
from .exceptions import (
    ConfigParseError,
    ConfigValidationError,
    DegenerateExtent,
    DegenerateInput,
    EmptyView,
    IndexOutOfRange,
    MeshFormatError,
    NonPositiveVolume,
    NoPlaneFound,
    NoStablePoints,
    OpenMesh,
    StablePlaceError,
)
from .logging import bind_run, setup_logging

__all__ = [
    "AugmentConfig",
    "BenchParams",
    "CameraConfig",
    "ClusterParams",
    "PlannerParams",
    "RansacParams",
    "SettleParams",
    "ToolConfig",
    "build_config",
    "get_settings",
    "load_config",
    "TOOL_NAME",
    "TOOL_VERSION",
    "Method",
    "Regime",
    "ConfigParseError",
    "ConfigValidationError",
    "DegenerateExtent",
    "DegenerateInput",
    "EmptyView",
    "IndexOutOfRange",
    "MeshFormatError",
    "NonPositiveVolume",
    "NoPlaneFound",
    "NoStablePoints",
    "OpenMesh",
    "StablePlaceError",
    "bind_run",
    "setup_logging",
]
