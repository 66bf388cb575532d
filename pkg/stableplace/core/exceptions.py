"""
Custom exceptions for the stableplace toolkit.
"""

from typing import Any, Dict, Optional


class StablePlaceError(Exception):
    """Base exception for all stableplace errors."""

    def __init__(self, message: str, error_code: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class DegenerateInput(StablePlaceError):
    """Raised when points are affinely dependent or a covariance is rank deficient."""

    def __init__(self, message: str, rank: Optional[int] = None, count: Optional[int] = None):
        details = {"rank": rank, "count": count}
        super().__init__(message, "DEGENERATE_INPUT", details)


class OpenMesh(StablePlaceError):
    """Raised when a mesh is not watertight or not consistently oriented."""

    def __init__(self, message: str, bad_edges: Optional[int] = None):
        details = {"bad_edges": bad_edges} if bad_edges is not None else {}
        super().__init__(message, "OPEN_MESH", details)


class NonPositiveVolume(StablePlaceError):
    """Raised when a closed mesh has inverted orientation."""

    def __init__(self, message: str, volume: Optional[float] = None):
        super().__init__(message, "NON_POSITIVE_VOLUME", {"volume": volume})


class NoPlaneFound(StablePlaceError):
    """Raised when plane fitting cannot produce a plane with enough support."""

    def __init__(self, message: str, best_inliers: Optional[int] = None):
        super().__init__(message, "NO_PLANE_FOUND", {"best_inliers": best_inliers})


class NoStablePoints(StablePlaceError):
    """Raised when fewer than three points pass the stability threshold."""

    def __init__(self, message: str, passing: Optional[int] = None, threshold: Optional[float] = None):
        super().__init__(message, "NO_STABLE_POINTS", {"passing": passing, "threshold": threshold})


class DegenerateExtent(StablePlaceError):
    """Raised when an object has zero extent along a query direction."""

    def __init__(self, message: str, extent: Optional[float] = None):
        super().__init__(message, "DEGENERATE_EXTENT", {"extent": extent})


class EmptyView(StablePlaceError):
    """Raised when no camera ray hits the mesh."""

    def __init__(self, message: str, rays: Optional[int] = None):
        super().__init__(message, "EMPTY_VIEW", {"rays": rays})


class IndexOutOfRange(StablePlaceError, IndexError):
    """Raised when a trace index lies outside the recorded steps."""

    def __init__(self, message: str, index: Optional[int] = None, length: Optional[int] = None):
        super().__init__(message, "INDEX_OUT_OF_RANGE", {"index": index, "length": length})


class MeshFormatError(StablePlaceError):
    """Raised when a mesh or point-cloud file cannot be read."""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message, "MESH_FORMAT_ERROR", {"path": path} if path else {})


class ConfigParseError(StablePlaceError):
    """Raised when a configuration file is not valid TOML/JSON."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message, "CONFIG_PARSE_ERROR", {"line": line, "column": column})
        self.line = line
        self.column = column


class ConfigValidationError(StablePlaceError):
    """Raised when configuration values are invalid or unknown."""

    def __init__(self, message: str, config_key: Optional[str] = None):
        details = {"config_key": config_key} if config_key else {}
        super().__init__(message, "CONFIG_VALIDATION_ERROR", details)
        self.config_key = config_key
