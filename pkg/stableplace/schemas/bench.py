from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from stableplace.core.constants import Method, Regime
from stableplace.schemas.common import Provenance


class TrialRecord(BaseModel):
    """Raw outcome of one placement trial."""

    object_id: str
    method: Method
    trial: int = Field(..., ge=0)
    has_plane: bool
    rotation_deg: Optional[float] = Field(default=None, ge=0)
    translation_cm: Optional[float] = Field(default=None, ge=0)
    stationary: bool = False
    success: bool = False
    error: Optional[str] = None


class ReportRow(BaseModel):
    object_id: str = Field(..., description="Object id, or 'total' for per-method aggregates")
    method: Method
    trials: int = Field(..., ge=0)
    successes: int = Field(..., ge=0)
    no_plane: int = Field(..., ge=0)
    rotation_deg: Optional[float] = Field(default=None, description="Mean over trials with a plane")
    translation_cm: Optional[float] = Field(default=None, description="Mean over trials with a plane")
    success_rate: float = Field(..., ge=0, le=100, description="SR in percent")


class BenchReport(BaseModel):
    regime: Regime
    methods: List[Method]
    trials: int
    success_deg: float
    tilt_deg: float
    rows: List[ReportRow] = Field(default_factory=list)
    aggregate: List[ReportRow] = Field(default_factory=list)
    trial_log: List[TrialRecord] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    provenance: Optional[Provenance] = None
