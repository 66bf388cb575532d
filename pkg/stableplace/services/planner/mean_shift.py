from typing import Optional

import numpy as np
from loguru import logger
from scipy.sparse import csr_matrix
from scipy.spatial import cKDTree

from stableplace.core.constants import DEFAULT_MEAN_SHIFT_MAX_ITER


def mean_shift(
    data: np.ndarray,
    bandwidth: float,
    max_iter: int = DEFAULT_MEAN_SHIFT_MAX_ITER,
    tol: Optional[float] = None,
) -> np.ndarray:
    """
    Flat-kernel mean shift started from every sample.

    Each mode moves to the mean of the samples within `bandwidth` until it
    moves less than `tol` (default 1e-3 × bandwidth). Modes are then merged
    greedily in input order: a mode farther than bandwidth/2 from every
    existing centre opens a new one. Every sample is labelled with the centre
    nearest to its mode.
    """
    if bandwidth <= 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    x = np.asarray(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if len(x) == 0:
        raise ValueError("mean_shift needs at least one sample")
    tol = 1e-3 * bandwidth if tol is None else tol

    tree = cKDTree(x)
    modes = x.copy()
    active = np.arange(len(x))
    iterations = 0
    while len(active) and iterations < max_iter:
        iterations += 1
        neighbours = tree.query_ball_point(modes[active], bandwidth)
        counts = np.fromiter((len(n) for n in neighbours), dtype=np.int64, count=len(active))
        rows = np.repeat(np.arange(len(active)), counts)
        cols = np.concatenate([np.asarray(n, dtype=np.int64) for n in neighbours])
        window = csr_matrix((np.ones(len(cols)), (rows, cols)), shape=(len(active), len(x)))
        sums = np.asarray(window @ x)
        shifted = np.where(counts[:, None] > 0, sums / np.maximum(counts, 1)[:, None], modes[active])
        moved = np.linalg.norm(shifted - modes[active], axis=1)
        modes[active] = shifted
        active = active[moved > tol]

    centres = [modes[0]]
    for mode in modes[1:]:
        if np.min(np.linalg.norm(np.asarray(centres) - mode, axis=1)) > bandwidth / 2.0:
            centres.append(mode)
    centres = np.asarray(centres)
    labels = np.argmin(np.linalg.norm(modes[:, None, :] - centres[None, :, :], axis=2), axis=1)
    logger.debug(f"Mean shift: {len(x)} samples, {len(centres)} clusters after {iterations} iterations")
    return labels.astype(np.int64)
