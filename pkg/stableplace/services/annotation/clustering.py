from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from loguru import logger
from sklearn.cluster import DBSCAN

from stableplace.core.constants import DEFAULT_CLUSTER_EPS_DEG, DEFAULT_CLUSTER_MIN_PTS
from stableplace.services.settling import SettleOutcome


@dataclass(frozen=True, eq=False)
class DirectionCluster:
    direction: np.ndarray
    members: List[SettleOutcome] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)


def angular_distances(directions: np.ndarray) -> np.ndarray:
    """Pairwise angles in radians between unit vectors."""
    return np.arccos(np.clip(directions @ directions.T, -1.0, 1.0))


def cluster_resting_directions(
    outcomes: Sequence[SettleOutcome],
    eps_deg: float = DEFAULT_CLUSTER_EPS_DEG,
    min_pts: int = DEFAULT_CLUSTER_MIN_PTS,
) -> List[DirectionCluster]:
    """
    Group stable outcomes by their object-frame down direction.

    DBSCAN with an angular metric; noise is discarded and each cluster's
    direction is the normalized mean of its members. Clusters come back in
    DBSCAN label order.
    """
    if not outcomes:
        return []
    directions = np.array([o.down_direction for o in outcomes])
    labels = DBSCAN(eps=np.radians(eps_deg), min_samples=min_pts, metric="precomputed").fit_predict(
        angular_distances(directions)
    )

    clusters = []
    for label in sorted(set(labels) - {-1}):
        idx = np.flatnonzero(labels == label)
        mean = directions[idx].mean(axis=0)
        norm = np.linalg.norm(mean)
        if norm < 1e-6:
            logger.warning(f"Dropping cluster {label}: member directions cancel out")
            continue
        clusters.append(DirectionCluster(mean / norm, [outcomes[i] for i in idx]))
    logger.debug(f"Clustered {len(outcomes)} outcomes into {len(clusters)} directions ({int(np.sum(labels < 0))} noise)")
    return clusters
