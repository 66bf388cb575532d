"""
Quasi-static settling on a (possibly tilted) table.

The object is represented by the convex hull of its mesh. After release it
falls straight down until its lowest point touches the table. From there
every step is one of:

- landing: the object is not flush with the table; it pivots about its
  lowest point onto the hull facet hit by the ray from the COM along the
  table's inward normal;
- rest: a facet is flush and the COM, projected along gravity, lies strictly
  inside it; the pose does not change;
- topple: the projected COM lies outside the flush facet; the object rotates
  about the nearest violated edge onto the neighbouring facet.

Pose changes feed the per-step movements and their windowed mean, the instability.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from stableplace.core.config import SettleParams
from stableplace.core.constants import COM_MARGIN, CONTACT_TOLERANCE, FLUSH_COS_TOLERANCE, ROLLING_MOVEMENT_FACTOR
from stableplace.core.exceptions import IndexOutOfRange
from stableplace.services.geometry import HullFacets, RigidPose, TriMesh, align_vectors, pose_delta
from stableplace.services.settling.body import PreparedBody, prepare_body
from stableplace.services.settling.table import TableConfig


def instability(movements: Sequence[float], window: int, i: int) -> float:
    """
    Windowed instability at 1-based step i.

    Mean of the last `window` movements up to i, or of all movements up to i
    while fewer than `window` have been recorded.

    Raises:
        IndexOutOfRange: If i is not in [1, len(movements)]
    """
    if not 1 <= i <= len(movements):
        raise IndexOutOfRange(f"Step {i} outside 1..{len(movements)}", index=i, length=len(movements))
    if i >= window:
        recent = movements[i - window : i]
    else:
        recent = movements[:i]
    return float(sum(recent) / len(recent))


@dataclass(frozen=True, eq=False)
class InstabilityTrace:
    poses: Tuple[RigidPose, ...]
    movements: Tuple[float, ...]
    window: int
    instabilities: Tuple[float, ...]
    converged: bool

    def __len__(self) -> int:
        return len(self.movements)


@dataclass(frozen=True, eq=False)
class SettleOutcome:
    """
    Final state of one settling episode.

    Attributes:
        pose: Final world pose
        resting_face: Hull facet the object rests on, None if it never came to rest
        instability: Final windowed instability
        stable: instability below epsilon1 while resting on a facet that supports the COM
        down_direction: Object-frame unit vector pointing into the table
        topples: Landing and topple events
        rolling: Whether a rolling contact was detected
        table_normal: Normal of the table the episode ran on
    """

    pose: RigidPose
    resting_face: Optional[int]
    instability: float
    stable: bool
    down_direction: np.ndarray
    topples: int
    rolling: bool
    table_normal: np.ndarray


@dataclass(frozen=True)
class SupportCheck:
    inside: bool
    edge: Optional[Tuple[int, int]] = None
    neighbor: Optional[int] = None


def support_check(facets: HullFacets, com: np.ndarray, facet_index: int, gravity: np.ndarray) -> SupportCheck:
    """
    Test whether facet `facet_index` supports the COM under object-frame `gravity`.

    The COM is projected along gravity onto the facet plane. It must clear
    every edge by more than COM_MARGIN; a point on an edge topples. On failure
    the topple edge is the violated edge nearest to the projection, then the
    most violated one, then the lowest loop index.
    """
    facet = facets[facet_index]
    along = float(facet.normal @ gravity)
    projected = com + (facet.offset - float(facet.normal @ com)) / along * gravity
    signed, segment = facets.signed_edge_distances(facet_index, projected)
    violated = np.flatnonzero(signed <= COM_MARGIN)
    if len(violated) == 0:
        return SupportCheck(True)
    order = np.lexsort((violated, signed[violated], segment[violated]))
    k = int(violated[order[0]])
    edge = facets.loop_edges(facet_index)[k]
    return SupportCheck(False, edge, facets.neighbor(facet_index, edge))


class Settler:
    """Runs settling episodes of one prepared body on one table."""

    def __init__(self, body: PreparedBody, table: TableConfig, params: SettleParams):
        self.body = body
        self.table = table
        self.params = params
        self._down = -np.asarray(table.normal)
        self._rolling_cos = float(np.cos(np.radians(params.rolling_angle_deg)))

    def _heights(self, pose: RigidPose) -> np.ndarray:
        return self.table.heights(pose.apply(self.body.hull_vertices))

    def _snap(self, pose: RigidPose) -> RigidPose:
        return pose.translated(-self._heights(pose).min() * self.table.normal)

    def _free_fall(self, pose: RigidPose) -> RigidPose:
        drop = self._heights(pose).min() / self.table.normal[2]
        return pose.translated(drop * self.table.gravity)

    def _flush_facet(self, pose: RigidPose) -> Optional[int]:
        k = self.body.facets.flush_facet(pose.rotation.T @ self._down, FLUSH_COS_TOLERANCE)
        if k < 0:
            return None
        heights = self._heights(pose)
        if np.all(heights[self.body.facets[k].loop] <= heights.min() + CONTACT_TOLERANCE):
            return k
        return None

    def _land(self, pose: RigidPose) -> Tuple[RigidPose, int]:
        k = self.body.facets.exit_facet(self.body.com, pose.rotation.T @ self._down)
        heights = self._heights(pose)
        pivot = pose.apply(self.body.hull_vertices[int(np.argmin(heights))])
        turn = align_vectors(pose.rotation @ self.body.facets.normals[k], self._down)
        return self._snap(pose.rotated_about(turn, pivot)), k

    def _topple(self, pose: RigidPose, edge: Tuple[int, int], target: int) -> RigidPose:
        pivot = pose.apply(self.body.hull_vertices[edge[0]])
        turn = align_vectors(pose.rotation @ self.body.facets.normals[target], self._down)
        return self._snap(pose.rotated_about(turn, pivot))

    def run(self, start: RigidPose) -> Tuple[SettleOutcome, InstabilityTrace]:
        params = self.params
        poses: List[RigidPose] = [start]
        movements: List[float] = []
        instabilities: List[float] = []

        def record(pose: RigidPose, floor: float = 0.0) -> float:
            movements.append(max(pose_delta(pose, poses[-1]), floor))
            poses.append(pose)
            instabilities.append(instability(movements, params.window, len(movements)))
            return instabilities[-1]

        pose = self._free_fall(start)
        record(pose)

        resting: Optional[int] = None
        converged, rolling, topples = False, False, 0
        visited = set()
        rolling_floor = ROLLING_MOVEMENT_FACTOR * params.epsilon2 if self.table.is_tilted else 0.0

        while len(movements) < params.max_steps:
            k = self._flush_facet(pose)
            if k is None:
                pose, k = self._land(pose)
                visited.add(k)
                topples += 1
                resting = None
                record(pose)
                continue

            visited.add(k)
            check = support_check(self.body.facets, self.body.com, k, pose.rotation.T @ self.table.gravity)
            if check.inside:
                resting = k
                if record(pose) < params.epsilon:
                    converged = True
                    break
                continue

            resting = None
            target = check.neighbor
            rolled = (
                float(self.body.facets.normals[k] @ self.body.facets.normals[target]) > self._rolling_cos
                or target in visited
            )
            rolling = rolling or rolled
            pose = self._topple(pose, check.edge, target)
            topples += 1
            record(pose, rolling_floor if rolled else 0.0)

        final_u = instabilities[-1]
        down = pose.rotation.T @ self._down
        outcome = SettleOutcome(
            pose=pose,
            resting_face=resting,
            instability=final_u,
            stable=resting is not None and final_u < params.epsilon1,
            down_direction=down / np.linalg.norm(down),
            topples=topples,
            rolling=rolling,
            table_normal=np.asarray(self.table.normal),
        )
        trace = InstabilityTrace(tuple(poses), tuple(movements), params.window, tuple(instabilities), converged)
        logger.debug(
            f"Settled in {len(movements)} steps: face={resting} instability={final_u:.3e} topples={topples} converged={converged}"
        )
        return outcome, trace


def settle_body(
    body: PreparedBody,
    start: RigidPose,
    table: Optional[TableConfig] = None,
    params: Optional[SettleParams] = None,
) -> Tuple[SettleOutcome, InstabilityTrace]:
    return Settler(body, table or TableConfig.flat(), params or SettleParams()).run(start)


def settle(
    mesh: TriMesh,
    start: RigidPose,
    table: Optional[TableConfig] = None,
    params: Optional[SettleParams] = None,
) -> Tuple[SettleOutcome, InstabilityTrace]:
    """
    Drop `mesh` from `start` and follow it until it stops or the horizon ends.

    Non-convergence is reported through `trace.converged`, never raised.

    Raises:
        OpenMesh: If the mesh is not watertight
    """
    return settle_body(prepare_body(mesh), start, table, params)
