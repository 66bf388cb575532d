from typing import List, Optional

from pydantic import BaseModel, Field

from stableplace.core.constants import Method
from stableplace.schemas.common import Provenance


class ProposalRecord(BaseModel):
    """Placement proposal written by `place`; rotation is None when no plane was found."""

    method: Method
    rotation: Optional[List[float]] = Field(default=None, min_length=9, max_length=9)
    source_normal: Optional[List[float]] = Field(default=None, min_length=3, max_length=3)
    confidence: float = Field(..., ge=0, le=1)
    provenance: Optional[Provenance] = None


class RankedPlaneEntry(BaseModel):
    model: List[float] = Field(..., min_length=4, max_length=4, description="a, b, c, d")
    score: float = Field(..., ge=0)
    inliers: List[int]
    cluster: int


class RankedPlanesRecord(BaseModel):
    planes: List[RankedPlaneEntry]
    best: int = 0
    rotation: List[float] = Field(..., min_length=9, max_length=9)
    provenance: Optional[Provenance] = None
