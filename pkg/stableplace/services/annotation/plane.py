from dataclasses import dataclass

import numpy as np

from stableplace.schemas.annotation import StablePlaneRecord
from stableplace.schemas.common import PoseRecord
from stableplace.services.geometry import RigidPose, unit


@dataclass(frozen=True, eq=False)
class StablePlane:
    """
    Verified support plane of an object.

    Attributes:
        normal: Object-frame unit vector V pointing into the table when resting
        support_mask: Per-vertex mask of the lowest height band
        rep_pose: Settled pose of the cluster member closest to V
        cluster_size: Number of drops that came to rest on V
        score: cluster_size over the number of drops
    """

    normal: np.ndarray
    support_mask: np.ndarray
    rep_pose: RigidPose
    cluster_size: int
    score: float

    def __post_init__(self):
        object.__setattr__(self, "normal", unit(self.normal))
        mask = np.asarray(self.support_mask, dtype=bool)
        if not mask.any():
            raise ValueError("Support mask selects no vertices")
        object.__setattr__(self, "support_mask", mask)

    def to_record(self) -> StablePlaneRecord:
        return StablePlaneRecord(
            normal=[float(v) for v in self.normal],
            support_vertices=[int(i) for i in np.flatnonzero(self.support_mask)],
            cluster_size=self.cluster_size,
            score=float(self.score),
            rep_pose=PoseRecord.from_pose(self.rep_pose),
        )

    @classmethod
    def from_record(cls, record: StablePlaneRecord, vertex_count: int) -> "StablePlane":
        mask = np.zeros(vertex_count, dtype=bool)
        mask[record.support_vertices] = True
        return cls(
            normal=np.asarray(record.normal),
            support_mask=mask,
            rep_pose=record.rep_pose.to_pose(),
            cluster_size=record.cluster_size,
            score=record.score,
        )
