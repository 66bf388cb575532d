from typing import Optional

from pydantic import BaseModel, Field

from stableplace.schemas.common import PoseRecord


class TraceLine(BaseModel):
    """One settling step; step 0 is the release pose and has no movement."""

    step: int = Field(..., ge=0)
    pose: PoseRecord
    movement: Optional[float] = Field(default=None, ge=0)
    instability: Optional[float] = Field(default=None, ge=0)
    window: int = Field(..., ge=1)
    converged: Optional[bool] = Field(default=None, description="Set on the last line only")
