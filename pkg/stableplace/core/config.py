"""
Configuration management for the stableplace toolkit.

Every tunable lives in one `ToolConfig`. Sections are plain pydantic models so
that the numeric services can take them as frozen parameter objects; the root
is a `BaseSettings` so the environment (prefix ``STABLEPLACE_``) can override
file values.
"""

import hashlib
import json
import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, DotEnvSettingsSource, PydanticBaseSettingsSource, SettingsConfigDict

from .constants import (
    DEFAULT_CAMERA_FOV_DEG,
    DEFAULT_CAMERA_HEIGHT,
    DEFAULT_CAMERA_RADIUS_FACTOR,
    DEFAULT_CAMERA_WIDTH,
    DEFAULT_CLUSTER_EPS_DEG,
    DEFAULT_CLUSTER_MIN_PTS,
    DEFAULT_DROP_CLEARANCE,
    DEFAULT_EPSILON,
    DEFAULT_EPSILON1,
    DEFAULT_EPSILON2,
    DEFAULT_FEATURE_BANDWIDTH,
    DEFAULT_FIXED_POINTS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_STEPS,
    DEFAULT_MEAN_SHIFT_MAX_ITER,
    DEFAULT_RANSAC_ITERATIONS,
    DEFAULT_RANSAC_MAX_PLANES,
    DEFAULT_RANSAC_TOLERANCE_RATIO,
    DEFAULT_ROLLING_ANGLE_DEG,
    DEFAULT_STABILITY_THRESHOLD,
    DEFAULT_SUBDIVISIONS,
    DEFAULT_SUCCESS_DEG,
    DEFAULT_SUPPORT_BAND,
    DEFAULT_TRIALS,
    DEFAULT_VIEWS,
    DEFAULT_VOXEL_RATIO,
    DEFAULT_WINDOW,
    ENV_PREFIX,
    MAX_TILT_DEG,
    MIN_RESOLUTION,
    VERIFY_AZIMUTHS,
    VERIFY_TILT_DEG,
    Regime,
)
from .exceptions import ConfigParseError, ConfigValidationError

_SECTION = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)


class SettleParams(BaseModel):
    """Thresholds and horizon of the quasi-static settling simulator."""

    model_config = _SECTION

    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0, description="Stop threshold on U")
    epsilon1: float = Field(default=DEFAULT_EPSILON1, gt=0, description="Stability threshold on U")
    epsilon2: float = Field(default=DEFAULT_EPSILON2, gt=0, description="Tilt-verification threshold on U")
    window: int = Field(default=DEFAULT_WINDOW, ge=1, alias="L", description="Instability window in steps")
    max_steps: int = Field(default=DEFAULT_MAX_STEPS, ge=1, description="Simulation horizon in steps")
    rolling_angle_deg: float = Field(
        default=DEFAULT_ROLLING_ANGLE_DEG, gt=0, description="Facet normals closer than this count as rolling"
    )
    drop_clearance: float = Field(default=DEFAULT_DROP_CLEARANCE, ge=0, description="Release height above the table")

    @model_validator(mode="after")
    def check_thresholds(self) -> "SettleParams":
        if self.epsilon2 < self.epsilon1:
            raise ValueError("epsilon2 must be >= epsilon1")
        return self


class ClusterParams(BaseModel):
    """Drop-grid clustering and tilt-verification settings."""

    model_config = _SECTION

    eps_deg: float = Field(default=DEFAULT_CLUSTER_EPS_DEG, gt=0, le=180, description="DBSCAN angular radius")
    min_pts: int = Field(default=DEFAULT_CLUSTER_MIN_PTS, ge=1, description="DBSCAN minimum samples")
    band: float = Field(default=DEFAULT_SUPPORT_BAND, gt=0, le=1, description="Support band as a height fraction")
    subdivisions: int = Field(default=DEFAULT_SUBDIVISIONS, ge=1, description="Euler grid subdivisions per angle")
    tilt_deg: float = Field(default=VERIFY_TILT_DEG, ge=0, le=MAX_TILT_DEG, description="Verification tilt")
    azimuths: int = Field(default=VERIFY_AZIMUTHS, ge=1, description="Verification tilt azimuths")
    facet_seeds: bool = Field(default=True, description="Also try hull sinks that no grid drop reached")


class RansacParams(BaseModel):
    """Plane-fitting settings shared by RPF and the planner."""

    model_config = _SECTION

    iterations: int = Field(default=DEFAULT_RANSAC_ITERATIONS, ge=1)
    tolerance_ratio: float = Field(
        default=DEFAULT_RANSAC_TOLERANCE_RATIO, gt=0, description="Inlier tolerance relative to bounding radius"
    )
    tolerance: Optional[float] = Field(default=None, gt=0, description="Absolute inlier tolerance override")
    max_planes: int = Field(default=DEFAULT_RANSAC_MAX_PLANES, ge=1, description="Planes extracted by RPF")

    def tolerance_for(self, radius: float) -> float:
        if self.tolerance is not None:
            return self.tolerance
        return max(self.tolerance_ratio * radius, 1e-9)


class PlannerParams(BaseModel):
    """Plane-selection settings."""

    model_config = _SECTION

    tau: float = Field(default=DEFAULT_STABILITY_THRESHOLD, ge=0, le=1, description="Stability threshold")
    bandwidth: Optional[float] = Field(default=None, gt=0, description="Mean-shift bandwidth override")
    feature_bandwidth: float = Field(default=DEFAULT_FEATURE_BANDWIDTH, gt=0)
    max_iter: int = Field(default=DEFAULT_MEAN_SHIFT_MAX_ITER, ge=1)


class AugmentConfig(BaseModel):
    """Point-cloud augmentation ranges."""

    model_config = _SECTION

    rotation_deg: float = Field(default=0.0, ge=0, description="Uniform rotation range per Euler angle")
    shear: float = Field(default=0.0, ge=0, description="Uniform off-diagonal shear range")
    jitter_sigma: float = Field(default=0.0, ge=0, description="Per-point jitter sigma (m)")
    noise_sigma: float = Field(default=0.0, ge=0, description="Global Gaussian offset sigma (m)")
    seed: int = Field(default=0)


class CameraConfig(BaseModel):
    """Virtual depth camera used for partial views."""

    model_config = _SECTION

    width: int = Field(default=DEFAULT_CAMERA_WIDTH, ge=MIN_RESOLUTION)
    height: int = Field(default=DEFAULT_CAMERA_HEIGHT, ge=MIN_RESOLUTION)
    fov_deg: float = Field(default=DEFAULT_CAMERA_FOV_DEG, gt=0, lt=180, description="Vertical field of view")
    radius_factor: float = Field(default=DEFAULT_CAMERA_RADIUS_FACTOR, gt=1)
    views: int = Field(default=DEFAULT_VIEWS, ge=1)
    voxel_ratio: float = Field(default=DEFAULT_VOXEL_RATIO, gt=0, description="Voxel size relative to radius")


class BenchParams(BaseModel):
    """Benchmark protocol settings."""

    model_config = _SECTION

    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    success_deg: float = Field(default=DEFAULT_SUCCESS_DEG, gt=0)
    tilt_deg: float = Field(default=VERIFY_TILT_DEG, ge=0, le=MAX_TILT_DEG)
    cloud_points: int = Field(default=DEFAULT_FIXED_POINTS, ge=3)
    regime: Regime = Field(default=Regime.PARTIAL)


class KnownKeysDotEnvSource(DotEnvSettingsSource):
    """`.env` values for declared settings only; other prefixed lines belong to other tools."""

    def __call__(self) -> Dict[str, Any]:
        return {key: value for key, value in super().__call__().items() if key in self.settings_cls.model_fields}


class ToolConfig(BaseSettings):
    """Root configuration."""

    settle: SettleParams = SettleParams()
    cluster: ClusterParams = ClusterParams()
    ransac: RansacParams = RansacParams()
    planner: PlannerParams = PlannerParams()
    augment: AugmentConfig = AugmentConfig()
    camera: CameraConfig = CameraConfig()
    bench: BenchParams = BenchParams()

    threads: int = Field(default=1, ge=1, description="Worker pool size")
    seed: int = Field(default=0, description="Global seed")
    log_level: str = Field(default=DEFAULT_LOG_LEVEL, description="Logging level")
    log_file: Optional[str] = Field(default=None, description="Log file path")
    log_json: bool = Field(default=True, description="JSON-lines records on standard error")

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="forbid",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # environment beats the config file; unknown keys in files still fail
        return env_settings, init_settings, KnownKeysDotEnvSource(settings_cls), file_secret_settings

    def payload_dict(self) -> Dict[str, Any]:
        """Result-affecting part of the configuration."""
        return self.model_dump(mode="json", by_alias=True, exclude={"threads", "log_level", "log_file", "log_json"})

    def config_hash(self) -> str:
        canonical = json.dumps(self.payload_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


_TOML_POSITION = re.compile(r"line (\d+), column (\d+)")


def _parse_text(text: str, suffix: str) -> Dict[str, Any]:
    if not text.strip():
        return {}
    if suffix == ".json" or (suffix != ".toml" and text.lstrip().startswith("{")):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigParseError(f"Invalid JSON config: {e.msg}", line=e.lineno, column=e.colno) from e
        if not isinstance(data, dict):
            raise ConfigParseError("JSON config must be an object", line=1, column=1)
        return data
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        match = _TOML_POSITION.search(str(e))
        line, column = (int(match.group(1)), int(match.group(2))) if match else (None, None)
        raise ConfigParseError(f"Invalid TOML config: {e}", line=line, column=column) from e


def build_config(data: Dict[str, Any]) -> ToolConfig:
    """Validate a raw mapping into a ToolConfig."""
    try:
        return ToolConfig(**data)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"])
        raise ConfigValidationError(f"{key}: {first['msg']}", config_key=key) from e


def load_config(path: Optional[Union[str, Path]] = None) -> ToolConfig:
    """
    Load the tool configuration from a TOML or JSON file.

    Absent keys take their defaults; environment variables override file values.

    Raises:
        ConfigParseError: If the file is not valid TOML/JSON
        ConfigValidationError: If a value is invalid or a key is unknown
    """
    if path is None:
        return build_config({})
    config_path = Path(path)
    text = config_path.read_text(encoding="utf-8")
    return build_config(_parse_text(text, config_path.suffix.lower()))


@lru_cache()
def get_settings() -> ToolConfig:
    """Process-wide default configuration (defaults plus environment)."""
    return build_config({})
