"""
Convex-hull stability analysis.

Every hull facet, put down on a level table, either holds (its COM
projection is inside) or topples across an edge onto a neighbour. Following
the topples from each facet ends on a sink; a sink's landing probability is
the area share of the facets that drain into it.
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from loguru import logger

from stableplace.core.constants import WORLD_UP, Method
from stableplace.services.baselines.proposal import PlacementProposal
from stableplace.services.geometry import HullFacets, PointCloud, align_vectors, convex_hull, mass_properties
from stableplace.services.settling import support_check


@dataclass(frozen=True, eq=False)
class BasinAnalysis:
    facets: HullFacets
    com: np.ndarray
    successor: np.ndarray
    sink_of: np.ndarray
    probabilities: np.ndarray

    @property
    def sinks(self) -> List[int]:
        return [int(k) for k in np.flatnonzero(self.successor < 0)]

    def best_sink(self) -> int:
        return int(np.argmax(self.probabilities))


def facet_solid_angles(facets: HullFacets, origin: np.ndarray) -> np.ndarray:
    """Solid angle of every facet polygon seen from `origin`, which must be inside the hull."""
    angles = np.zeros(len(facets))
    for facet in facets:
        corners = facets.vertices[facet.loop] - origin
        a = corners[0]
        for b, c in zip(corners[1:-1], corners[2:]):
            la, lb, lc = np.linalg.norm(a), np.linalg.norm(b), np.linalg.norm(c)
            numerator = abs(float(a @ np.cross(b, c)))
            denominator = la * lb * lc + (a @ b) * lc + (a @ c) * lb + (b @ c) * la
            angles[facet.index] += 2.0 * np.arctan2(numerator, denominator)
    return angles


def basin_analysis(cloud: PointCloud, weighting: str = "area") -> BasinAnalysis:
    """
    Topple graph and basin probabilities of the cloud's hull.

    A facet's weight is its area share, or with `weighting="solid_angle"` the
    share of directions from the COM that leave the hull through it, which is
    the landing distribution of drops from uniformly random orientations.

    Raises:
        DegenerateInput: If the cloud has fewer than 4 points or is flat
    """
    hull = convex_hull(cloud)
    facets = HullFacets(hull)
    com = mass_properties(hull).com

    successor = np.full(len(facets), -1, dtype=np.int64)
    for k in range(len(facets)):
        check = support_check(facets, com, k, facets.normals[k])
        if not check.inside:
            successor[k] = check.neighbor

    sink_of = np.empty(len(facets), dtype=np.int64)
    for k in range(len(facets)):
        path, current = [], k
        while successor[current] >= 0 and current not in path:
            path.append(current)
            current = int(successor[current])
        sink_of[k] = current

    if weighting == "area":
        weights = facets.areas
    elif weighting == "solid_angle":
        weights = facet_solid_angles(facets, com)
    else:
        raise ValueError(f"Unknown facet weighting: {weighting}")
    probabilities = np.zeros(len(facets))
    np.add.at(probabilities, sink_of, weights)
    probabilities /= weights.sum()
    return BasinAnalysis(facets, com, successor, sink_of, probabilities)


def chsa(cloud: PointCloud, table_normal: Sequence[float] = WORLD_UP) -> PlacementProposal:
    """Put the object down on the hull facet with the largest basin probability."""
    analysis = basin_analysis(cloud)
    best = analysis.best_sink()
    normal = analysis.facets.normals[best]
    logger.debug(f"CHSA: {len(analysis.sinks)} sinks, best facet {best} with p={analysis.probabilities[best]:.3f}")
    return PlacementProposal(
        method=Method.CHSA,
        rotation=align_vectors(normal, -np.asarray(table_normal, dtype=float)),
        source_normal=normal,
        confidence=float(analysis.probabilities[best]),
    )
