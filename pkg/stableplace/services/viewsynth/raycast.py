"""
Vectorized ray/triangle intersection (Möller–Trumbore) for a single origin.
"""

from typing import Tuple

import numpy as np

# rays × triangles evaluated per batch
_BATCH_ELEMENTS = 1 << 18
_PARALLEL_EPS = 1e-12


def cast_rays(origin: np.ndarray, directions: np.ndarray, triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nearest hit of every ray.

    Args:
        origin: (3,) shared ray origin
        directions: (R, 3) ray directions
        triangles: (T, 3, 3) triangle corners

    Returns:
        (distance, face) per ray; misses have distance inf and face -1.
        Distances are in units of the direction length.
    """
    origin = np.asarray(origin, dtype=float)
    directions = np.asarray(directions, dtype=float)
    v0 = triangles[:, 0]
    e1 = triangles[:, 1] - v0
    e2 = triangles[:, 2] - v0
    s = origin[None, :] - v0

    distance = np.full(len(directions), np.inf)
    face = np.full(len(directions), -1, dtype=np.int64)
    step = max(1, _BATCH_ELEMENTS // max(len(triangles), 1))
    for start in range(0, len(directions), step):
        d = directions[start : start + step]
        p = np.cross(d[:, None, :], e2[None, :, :])
        det = np.einsum("tk,rtk->rt", e1, p)
        valid = np.abs(det) > _PARALLEL_EPS
        inv = np.where(valid, 1.0 / np.where(valid, det, 1.0), 0.0)
        u = np.einsum("tk,rtk->rt", s, p) * inv
        q = np.cross(s, e1)
        v = np.einsum("rk,tk->rt", d, q) * inv
        t = np.einsum("tk,tk->t", e2, q)[None, :] * inv
        hit = valid & (u >= 0.0) & (v >= 0.0) & (u + v <= 1.0) & (t > _PARALLEL_EPS)
        t = np.where(hit, t, np.inf)
        nearest = np.argmin(t, axis=1)
        best = t[np.arange(len(d)), nearest]
        distance[start : start + len(d)] = best
        face[start : start + len(d)] = np.where(np.isfinite(best), nearest, -1)
    return distance, face
