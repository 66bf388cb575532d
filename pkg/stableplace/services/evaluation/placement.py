"""
Placement scoring: release the object in the proposed orientation and
measure how far it moves before coming to rest.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from stableplace.core.config import SettleParams
from stableplace.core.constants import DEFAULT_SUCCESS_DEG, METERS_TO_CM
from stableplace.services.baselines.proposal import PlacementProposal
from stableplace.services.geometry import RigidPose, TriMesh
from stableplace.services.settling import (
    InstabilityTrace,
    PreparedBody,
    SettleOutcome,
    TableConfig,
    prepare_body,
    settle_body,
)


@dataclass(frozen=True, eq=False)
class PlacementResult:
    """
    Object stability of one placement.

    Drifts are None for the no-plane marker.
    """

    has_plane: bool
    rotation_deg: Optional[float]
    translation_cm: Optional[float]
    stationary: bool
    success: bool
    outcome: Optional[SettleOutcome] = None
    trace: Optional[InstabilityTrace] = None

    @classmethod
    def no_plane(cls) -> "PlacementResult":
        return cls(has_plane=False, rotation_deg=None, translation_cm=None, stationary=False, success=False)


def trace_drift(trace: InstabilityTrace, com: np.ndarray) -> Tuple[float, float]:
    """Accumulated geodesic rotation (degrees) and COM travel (cm) along a trace."""
    if len(trace.poses) < 2:
        return 0.0, 0.0
    rotations = np.stack([p.rotation for p in trace.poses])
    steps = Rotation.from_matrix(rotations[1:] @ np.transpose(rotations[:-1], (0, 2, 1)))
    rotation_deg = float(np.degrees(steps.magnitude()).sum())
    centers = np.stack([p.apply(com) for p in trace.poses])
    translation_cm = float(np.linalg.norm(np.diff(centers, axis=0), axis=1).sum()) * METERS_TO_CM
    return rotation_deg, translation_cm


def resting_start(body: PreparedBody, rotation: np.ndarray, table: TableConfig) -> RigidPose:
    """Pose in `rotation` with the lowest hull point touching the table."""
    pose = RigidPose(rotation, -rotation @ body.com)
    heights = table.heights(pose.apply(body.hull_vertices))
    return pose.translated(-heights.min() * table.normal)


def evaluate_placement(
    mesh: TriMesh,
    proposal: PlacementProposal,
    params: Optional[SettleParams] = None,
    table: Optional[TableConfig] = None,
    success_deg: float = DEFAULT_SUCCESS_DEG,
    body: Optional[PreparedBody] = None,
) -> PlacementResult:
    """
    Settle the object placed with the proposal's rotation.

    On a tilted table the object is placed as on the level table and the
    table is then tilted under it. The placement is stationary when settling
    converged on a supporting facet, and successful when it is also turned by
    less than `success_deg` in total.

    Raises:
        OpenMesh: If the mesh is not watertight
    """
    if not proposal.has_plane:
        return PlacementResult.no_plane()
    params = params or SettleParams()
    table = table or TableConfig.flat()
    body = body or prepare_body(mesh)

    rotation = table.rotation_from_level() @ np.asarray(proposal.rotation, dtype=float)
    # re-orthonormalize what came through JSON or float products
    rotation = Rotation.from_matrix(rotation).as_matrix()
    outcome, trace = settle_body(body, resting_start(body, rotation, table), table, params)

    rotation_deg, translation_cm = trace_drift(trace, body.com)
    stationary = trace.converged and outcome.resting_face is not None
    return PlacementResult(
        has_plane=True,
        rotation_deg=rotation_deg,
        translation_cm=translation_cm,
        stationary=stationary,
        success=stationary and rotation_deg < success_deg,
        outcome=outcome,
        trace=trace,
    )
