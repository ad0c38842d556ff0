"""Pure NumPy implementation of the exact-greedy split scan.

Fallback used when the compiled extension is unavailable. Both backends must
produce bit-identical results: prefix statistics come from cumsum (strictly
sequential accumulation, matching the C loop) and every candidate gain is
evaluated with the same elementwise operation order.
"""

from __future__ import annotations

import numpy as np


def best_split(
    x: np.ndarray,
    order: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    g_total: float,
    h_total: float,
    parent_term: float,
    reg_lambda: float,
    gamma: float,
    min_child_weight: float,
) -> tuple[int, float, float]:
    """Scan every feature boundary; return (feature, threshold, gain).

    ``x`` is the node's row-major feature block, ``order`` the per-column
    stable argsort of ``x``. Returns feature -1 when no candidate has
    strictly positive gain. Ties resolve to the lowest feature index, then
    the lowest threshold, by scanning candidates in that order.
    """
    n = x.shape[0]
    if n < 2:
        return (-1, 0.0, 0.0)
    sv = np.take_along_axis(x, order, axis=0)
    gl = np.cumsum(g[order], axis=0)[:-1]
    hl = np.cumsum(h[order], axis=0)[:-1]
    gr = g_total - gl
    hr = h_total - hl
    with np.errstate(divide="ignore", invalid="ignore"):
        gains = 0.5 * (gl * gl / (hl + reg_lambda) + gr * gr / (hr + reg_lambda) - parent_term) - gamma
    blocked = (sv[1:] == sv[:-1]) | (hl < min_child_weight) | (hr < min_child_weight)
    gains[blocked] = -np.inf
    gains[np.isnan(gains)] = -np.inf
    flat = np.ravel(gains, order="F")  # feature-major: first argmax = lowest feature, lowest threshold
    best = int(np.argmax(flat))
    best_gain = float(flat[best])
    if not best_gain > 0.0:
        return (-1, 0.0, 0.0)
    feature, boundary = divmod(best, n - 1)
    threshold = (float(sv[boundary, feature]) + float(sv[boundary + 1, feature])) / 2.0
    return (int(feature), threshold, best_gain)
