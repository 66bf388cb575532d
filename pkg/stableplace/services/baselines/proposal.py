from dataclasses import dataclass
from typing import Optional

import numpy as np

from stableplace.core.constants import Method
from stableplace.schemas.common import Provenance
from stableplace.schemas.placement import ProposalRecord


@dataclass(frozen=True, eq=False)
class PlacementProposal:
    """
    Rotation to apply to an object before release.

    `rotation` is None for the no-plane marker; when `source_normal` is set the
    rotation maps it onto the negative table normal.
    """

    method: Method
    rotation: Optional[np.ndarray]
    source_normal: Optional[np.ndarray]
    confidence: float

    @classmethod
    def no_plane(cls, method: Method) -> "PlacementProposal":
        return cls(method=method, rotation=None, source_normal=None, confidence=0.0)

    @property
    def has_plane(self) -> bool:
        return self.rotation is not None

    def to_record(self, provenance: Optional[Provenance] = None) -> ProposalRecord:
        return ProposalRecord(
            method=self.method,
            rotation=None if self.rotation is None else [float(v) for v in np.asarray(self.rotation).reshape(-1)],
            source_normal=None if self.source_normal is None else [float(v) for v in self.source_normal],
            confidence=float(np.clip(self.confidence, 0.0, 1.0)),
            provenance=provenance,
        )

    @classmethod
    def from_record(cls, record: ProposalRecord) -> "PlacementProposal":
        return cls(
            method=record.method,
            rotation=None if record.rotation is None else np.asarray(record.rotation).reshape(3, 3),
            source_normal=None if record.source_normal is None else np.asarray(record.source_normal),
            confidence=record.confidence,
        )
