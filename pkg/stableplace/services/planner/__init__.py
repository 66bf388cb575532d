from stableplace.services.planner.mean_shift import mean_shift
from stableplace.services.planner.oracle import VisiblePlaneLabel, oracle_scores, transfer_labels
from stableplace.services.planner.placement import plan_placement
from stableplace.services.planner.rotation import placement_rotation
from stableplace.services.planner.selection import RankedPlane, RankedPlanes, select_plane

__all__ = [
    "mean_shift",
    "VisiblePlaneLabel",
    "oracle_scores",
    "transfer_labels",
    "plan_placement",
    "placement_rotation",
    "RankedPlane",
    "RankedPlanes",
    "select_plane",
]
