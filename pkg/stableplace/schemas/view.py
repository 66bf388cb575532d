from typing import List, Optional

from pydantic import BaseModel, Field

from stableplace.schemas.common import PoseRecord, Provenance


class CameraRecord(BaseModel):
    pose: PoseRecord = Field(..., description="Camera-to-world pose, OpenCV axes")
    fx: float = Field(..., gt=0)
    fy: float = Field(..., gt=0)
    cx: float
    cy: float
    width: int = Field(..., ge=16)
    height: int = Field(..., ge=16)


class VisiblePlane(BaseModel):
    plane_index: int = Field(..., ge=0, description="Index into the annotation record's planes")
    normal: List[float] = Field(..., min_length=3, max_length=3)
    support_points: List[int] = Field(..., min_length=3)
    normal_error_deg: float = Field(..., ge=0)


class ViewSidecar(BaseModel):
    """JSON written next to every synthesized view cloud."""

    object_id: str
    view_index: int = Field(..., ge=0)
    cloud: str
    points: int = Field(..., ge=1)
    camera: CameraRecord
    planes: List[VisiblePlane] = Field(default_factory=list)
    provenance: Optional[Provenance] = None
