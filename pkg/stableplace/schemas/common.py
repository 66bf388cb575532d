import json
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from stableplace.core.config import ToolConfig
from stableplace.core.constants import TOOL_NAME, TOOL_VERSION
from stableplace.services.geometry import RigidPose


class PoseRecord(BaseModel):
    """Pose as 9 row-major rotation entries plus a translation."""

    model_config = ConfigDict(populate_by_name=True)

    R: List[float] = Field(..., min_length=9, max_length=9)
    T: List[float] = Field(..., min_length=3, max_length=3)

    @classmethod
    def from_pose(cls, pose: RigidPose) -> "PoseRecord":
        return cls(R=[float(v) for v in pose.rotation.reshape(-1)], T=[float(v) for v in pose.translation])

    def to_pose(self) -> RigidPose:
        return RigidPose(np.asarray(self.R).reshape(3, 3), np.asarray(self.T))


class Provenance(BaseModel):
    tool: str = TOOL_NAME
    version: str = TOOL_VERSION
    seed: int
    config_hash: str
    created_at: Optional[str] = None

    @field_validator("config_hash")
    @classmethod
    def validate_hash(cls, v: str) -> str:
        if len(v) != 64:
            raise ValueError("config_hash must be a SHA-256 hex digest")
        return v


def make_provenance(config: ToolConfig, seed: Optional[int] = None) -> Provenance:
    return Provenance(
        seed=config.seed if seed is None else seed,
        config_hash=config.config_hash(),
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def canonical_json(model: BaseModel, include_timestamp: bool = True) -> str:
    """JSON with sorted keys; optionally without provenance.created_at."""
    data: Dict[str, Any] = model.model_dump(mode="json")
    if not include_timestamp and isinstance(data.get("provenance"), dict):
        data["provenance"].pop("created_at", None)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
