"""Compiled point-versus-polygon kernels."""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

# the bundled TBB is too old for numba; fall back quietly
numba.config.THREADING_LAYER = "omp"


def configure_threads() -> int:
    """Apply SUBORD_LAB_THREADS (if set) to the numba thread pool."""
    raw = os.environ.get("SUBORD_LAB_THREADS")
    if not raw:
        return numba.get_num_threads()
    n = max(1, min(int(raw), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n


@njit(parallel=True, cache=True)
def winding_and_clearance(xs, ys, px, py):
    """Winding number of the closed polygon (xs, ys) about every point, and
    the distance from every point to the polygon.

    Crossings are counted with the signed upward/downward edge rule, so the
    result is an exact integer for the polygon.
    """
    n = xs.shape[0]
    m = px.shape[0]
    wn = np.zeros(m, dtype=np.int64)
    dist = np.empty(m, dtype=np.float64)
    for k in prange(m):
        x = px[k]
        y = py[k]
        w = 0
        best = np.inf
        for i in range(n):
            j = i + 1
            if j == n:
                j = 0
            x0 = xs[i]
            y0 = ys[i]
            x1 = xs[j]
            y1 = ys[j]
            dx = x1 - x0
            dy = y1 - y0
            side = dx * (y - y0) - (x - x0) * dy
            if y0 <= y:
                if y1 > y and side > 0.0:
                    w += 1
            elif y1 <= y and side < 0.0:
                w -= 1
            # cheap reject before the exact segment distance
            lo = x0 if x0 < x1 else x1
            hi = x1 if x0 < x1 else x0
            gx = lo - x if x < lo else (x - hi if x > hi else 0.0)
            lo = y0 if y0 < y1 else y1
            hi = y1 if y0 < y1 else y0
            gy = lo - y if y < lo else (y - hi if y > hi else 0.0)
            if gx * gx + gy * gy >= best:
                continue
            l2 = dx * dx + dy * dy
            t = 0.0
            if l2 > 0.0:
                t = ((x - x0) * dx + (y - y0) * dy) / l2
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            ex = x0 + t * dx - x
            ey = y0 + t * dy - y
            d2 = ex * ex + ey * ey
            if d2 < best:
                best = d2
        wn[k] = w
        dist[k] = np.sqrt(best)
    return wn, dist


@njit(cache=True)
def build_strips(xs, ys, bounds):
    """Bucket polygon edges into the horizontal strips delimited by the
    increasing array ``bounds``.  Returns (offsets, edges) in CSR layout."""
    n = xs.shape[0]
    k = bounds.shape[0] - 1
    lo = np.empty(n, dtype=np.int64)
    hi = np.empty(n, dtype=np.int64)
    counts = np.zeros(k + 1, dtype=np.int64)
    for i in range(n):
        j = i + 1 if i + 1 < n else 0
        a = min(ys[i], ys[j])
        b = max(ys[i], ys[j])
        s = min(max(np.searchsorted(bounds, a, side="right") - 1, 0), k - 1)
        t = min(max(np.searchsorted(bounds, b, side="right") - 1, 0), k - 1)
        lo[i] = s
        hi[i] = t
        for u in range(s, t + 1):
            counts[u + 1] += 1
    offsets = np.cumsum(counts)
    fill = offsets[:-1].copy()
    edges = np.empty(offsets[-1], dtype=np.int64)
    for i in range(n):
        for u in range(lo[i], hi[i] + 1):
            edges[fill[u]] = i
            fill[u] += 1
    return offsets, edges


@njit(cache=True)
def _seg_d2(x, y, x0, y0, x1, y1):
    dx = x1 - x0
    dy = y1 - y0
    l2 = dx * dx + dy * dy
    t = 0.0
    if l2 > 0.0:
        t = ((x - x0) * dx + (y - y0) * dy) / l2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    ex = x0 + t * dx - x
    ey = y0 + t * dy - y
    return ex * ex + ey * ey


@njit(parallel=True, cache=True)
def winding_and_clearance_strips(xs, ys, px, py, bounds, offsets, edges, cap):
    """Same contract as winding_and_clearance, using the strip index.

    Distances are exact up to ``cap``; beyond it the search stops and the
    returned value is only a lower bound that is at least ``cap``.
    """
    n = xs.shape[0]
    k = bounds.shape[0] - 1
    m = px.shape[0]
    wn = np.zeros(m, dtype=np.int64)
    dist = np.empty(m, dtype=np.float64)
    for q in prange(m):
        x = px[q]
        y = py[q]
        s = np.searchsorted(bounds, y, side="right") - 1
        if y == bounds[k]:
            s = k - 1
        w = 0
        if 0 <= s < k:
            for e in range(offsets[s], offsets[s + 1]):
                i = edges[e]
                j = i + 1 if i + 1 < n else 0
                ya = ys[i]
                yb = ys[j]
                side = (xs[j] - xs[i]) * (y - ya) - (x - xs[i]) * (yb - ya)
                if ya <= y:
                    if yb > y and side > 0.0:
                        w += 1
                elif yb <= y and side < 0.0:
                    w -= 1
        wn[q] = w
        # nearest edge: widen the strip window until the next strip is
        # farther than the best distance found (or than cap)
        best = np.inf
        c = min(max(s, 0), k - 1)
        for step in range(k):
            done = True
            for u in (c - step, c + step):
                if u < 0 or u >= k or (step == 0 and u != c):
                    continue
                if y < bounds[u]:
                    gap = bounds[u] - y
                elif y > bounds[u + 1]:
                    gap = y - bounds[u + 1]
                else:
                    gap = 0.0
                if gap > 0.0 and (gap * gap >= best or gap >= cap):
                    continue
                done = False
                for e in range(offsets[u], offsets[u + 1]):
                    i = edges[e]
                    j = i + 1 if i + 1 < n else 0
                    d2 = _seg_d2(x, y, xs[i], ys[i], xs[j], ys[j])
                    if d2 < best:
                        best = d2
            if done and step > 0:
                break
        d = np.sqrt(best)
        dist[q] = d if d < cap else cap
    return wn, dist
