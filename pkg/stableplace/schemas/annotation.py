from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from stableplace.core.constants import NO_STABLE_PLANES_NOTE
from stableplace.schemas.common import PoseRecord, Provenance


class StablePlaneRecord(BaseModel):
    normal: List[float] = Field(..., min_length=3, max_length=3, description="Object-frame unit normal V")
    support_vertices: List[int] = Field(..., min_length=1, description="Mesh vertex indices in the support band")
    cluster_size: int = Field(..., ge=1)
    score: float = Field(..., ge=0)
    rep_pose: PoseRecord

    @field_validator("normal")
    @classmethod
    def validate_normal(cls, v: List[float]) -> List[float]:
        norm = sum(c * c for c in v) ** 0.5
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"normal must be unit length, got |V| = {norm}")
        return v


class AnnotationRecord(BaseModel):
    """Dataset entry (object, stable planes) as written to `<object_id>.json`."""

    object_id: str
    mesh: str
    params: Dict[str, Any] = Field(default_factory=dict, description="Settle and cluster parameters")
    planes: List[StablePlaneRecord] = Field(default_factory=list)
    has_stable_planes: bool = True
    note: Optional[str] = None
    provenance: Optional[Provenance] = None

    @model_validator(mode="after")
    def flag_empty(self) -> "AnnotationRecord":
        if not self.planes:
            self.has_stable_planes = False
            self.note = self.note or NO_STABLE_PLANES_NOTE
        return self
