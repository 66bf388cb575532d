"""
Stable-plane annotation of object meshes.

Pipeline per object: drop grid → keep stable outcomes → cluster down
directions → support mask per cluster → tilted-table verification → record.

The Euler grid only releases the object from a few dozen distinct down
directions, so narrow basins (the caps of a long rod) can be missed. Hull
facets that hold the COM on the level and the tilted table and lie outside
every cluster are settled once from flush and join as single-drop clusters.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from stableplace.core.config import ToolConfig, get_settings
from stableplace.schemas.annotation import AnnotationRecord
from stableplace.schemas.common import make_provenance
from stableplace.services.annotation.clustering import DirectionCluster, cluster_resting_directions
from stableplace.services.annotation.plane import StablePlane
from stableplace.services.annotation.support import extract_support_mask
from stableplace.services.annotation.verification import tilt_verify
from stableplace.services.geometry import TriMesh, align_vectors
from stableplace.services.settling import (
    PreparedBody,
    TableConfig,
    drop_grid,
    prepare_body,
    release_pose,
    settle_body,
    support_check,
)
from stableplace.utils.seeds import derive_seed


class Annotator:
    """Produces `AnnotationRecord`s under one tool configuration."""

    def __init__(self, config: Optional[ToolConfig] = None, workers: int = 1):
        self.config = config or get_settings()
        self.workers = workers

    def _candidate(self, mesh: TriMesh, cluster: DirectionCluster, drops: int) -> StablePlane:
        closest = max(range(cluster.size), key=lambda i: (float(cluster.members[i].down_direction @ cluster.direction), -i))
        return StablePlane(
            normal=cluster.direction,
            support_mask=extract_support_mask(mesh, cluster.direction, self.config.cluster.band),
            rep_pose=cluster.members[closest].pose,
            cluster_size=cluster.size,
            score=cluster.size / drops,
        )

    def _facet_seeds(self, body: PreparedBody, clusters: Sequence[DirectionCluster]) -> List[DirectionCluster]:
        settle, cluster = self.config.settle, self.config.cluster
        cos_limit = np.cos(np.radians(cluster.eps_deg))
        level = TableConfig.flat()
        tilted = [TableConfig.tilted(cluster.tilt_deg, 360.0 * k / cluster.azimuths) for k in range(cluster.azimuths)]
        covered = [c.direction for c in clusters]

        seeds: List[DirectionCluster] = []
        for facet in body.facets:
            normal = facet.normal
            if covered and max(float(d @ normal) for d in covered) >= cos_limit:
                continue
            if not support_check(body.facets, body.com, facet.index, normal).inside:
                continue
            gravities = [align_vectors(normal, -t.normal).T @ t.gravity for t in tilted]
            if not all(support_check(body.facets, body.com, facet.index, g).inside for g in gravities):
                continue
            start = release_pose(body, align_vectors(normal, -level.normal), level, 0.0)
            outcome, _ = settle_body(body, start, level, settle)
            if outcome.stable and float(outcome.down_direction @ normal) >= cos_limit:
                seeds.append(DirectionCluster(outcome.down_direction, [outcome]))
                covered.append(outcome.down_direction)
        if seeds:
            logger.info(f"Seeded {len(seeds)} hull facets the drop grid never reached")
        return seeds

    def planes(self, mesh: TriMesh, body: Optional[PreparedBody] = None) -> List[StablePlane]:
        """Verified stable planes, largest cluster first."""
        settle, cluster = self.config.settle, self.config.cluster
        body = body or prepare_body(mesh)
        outcomes = drop_grid(mesh, settle, cluster.subdivisions, workers=self.workers, body=body)
        stable = [o for o in outcomes if o.stable]
        clusters = cluster_resting_directions(stable, cluster.eps_deg, cluster.min_pts)
        if cluster.facet_seeds:
            clusters += self._facet_seeds(body, clusters)

        verified: List[StablePlane] = []
        for c in sorted(clusters, key=lambda c: -c.size):
            candidate = self._candidate(mesh, c, len(outcomes))
            if not tilt_verify(body, candidate, settle, cluster):
                logger.info(f"Rejected plane {np.round(c.direction, 4).tolist()} (cluster of {c.size}) on tilt check")
                continue
            separation = [np.degrees(np.arccos(np.clip(p.normal @ candidate.normal, -1.0, 1.0))) for p in verified]
            if separation and min(separation) < cluster.eps_deg:
                logger.warning(f"Dropping plane {np.round(c.direction, 4).tolist()}: within {cluster.eps_deg}° of a larger one")
                continue
            verified.append(candidate)
        return verified

    def annotate(self, mesh: TriMesh, object_id: str = "object", mesh_ref: str = "") -> AnnotationRecord:
        planes = self.planes(mesh)
        record = AnnotationRecord(
            object_id=object_id,
            mesh=mesh_ref,
            params={
                "settle": self.config.settle.model_dump(mode="json", by_alias=True),
                "cluster": self.config.cluster.model_dump(mode="json"),
            },
            planes=[p.to_record() for p in planes],
            provenance=make_provenance(self.config, derive_seed(self.config.seed, object_id)),
        )
        logger.info(f"Annotated {object_id}: {len(planes)} stable planes")
        return record


def annotate(
    mesh: TriMesh,
    config: Optional[ToolConfig] = None,
    object_id: str = "object",
    mesh_ref: str = "",
    workers: int = 1,
) -> AnnotationRecord:
    """
    Annotate one watertight mesh.

    Objects without a surviving plane get an empty record flagged
    "no stable planes".

    Raises:
        OpenMesh: If the mesh is not watertight
    """
    return Annotator(config, workers).annotate(mesh, object_id, mesh_ref)


def annotate_corpus(
    objects: Sequence[Tuple[str, TriMesh, str]],
    config: Optional[ToolConfig] = None,
    workers: int = 1,
) -> List[AnnotationRecord]:
    """Annotate (object_id, mesh, mesh_ref) triples in a worker pool, results in input order."""
    annotator = Annotator(config, workers=1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda item: annotator.annotate(item[1], item[0], item[2]), objects))
    return [annotator.annotate(mesh, object_id, ref) for object_id, mesh, ref in objects]


def record_planes(record: AnnotationRecord, mesh: TriMesh) -> List[StablePlane]:
    return [StablePlane.from_record(p, len(mesh.vertices)) for p in record.planes]
