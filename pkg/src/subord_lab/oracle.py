"""Slow, independent checks used by the test suite.

Nothing here shares code with the winding-number path in geometry: image
containment is decided by even-odd ray casting against a uniformly sampled
outer ring plus nearest-neighbour distance to a dense image point cloud.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .analytic import AnalyticMap, evaluate

F_RADII = (0.25, 0.5, 0.75, 0.9, 0.99, 0.999)


@dataclass(frozen=True)
class OracleConfig:
    image_resolution: tuple[int, int] = (512, 2048)
    fd_step: float = 1e-6

    def __post_init__(self):
        if min(self.image_resolution) < 64:
            raise ValueError("image resolution must be at least 64 in each direction")
        if not 0.0 < self.fd_step < 1e-3:
            raise ValueError("fd_step must lie in (0, 1e-3)")


def _even_odd_inside(ring: np.ndarray, pts: np.ndarray, chunk: int = 1024) -> np.ndarray:
    x0, y0 = ring.real, ring.imag
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    inside = np.zeros(pts.shape, dtype=bool)
    for start in range(0, len(pts), chunk):
        px = pts.real[start:start + chunk, None]
        py = pts.imag[start:start + chunk, None]
        straddle = (y0 > py) != (y1 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xcross = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
        hits = straddle & (px < xcross)
        inside[start:start + chunk] = (np.count_nonzero(hits, axis=1) % 2) == 1
    return inside


def grid_containment(f: AnalyticMap, g: AnalyticMap, cfg: OracleConfig | None = None) -> bool:
    """Brute-force f(0) = g(0) and f(D) ⊆ g(D) on samples."""
    cfg = cfg or OracleConfig()
    if abs(evaluate(f, 0.0) - evaluate(g, 0.0)) > 1e-9:
        return False
    n_rad, n_ang = cfg.image_resolution
    theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
    circle = np.exp(1j * theta)
    fz = evaluate(f, np.asarray(F_RADII)[:, None] * circle[None, :]).ravel()
    radii = 1.0 - np.logspace(0.0, -6.0, n_rad)
    ring = evaluate(g, radii[-1] * circle)
    inside = _even_odd_inside(ring, fz)
    if inside.all():
        return True
    cloud = evaluate(g, radii[:, None] * circle[None, :]).ravel()
    tree = cKDTree(np.column_stack([cloud.real, cloud.imag]))
    rest = fz[~inside]
    dist, _ = tree.query(np.column_stack([rest.real, rest.imag]))
    return bool(np.all(dist <= 1e-6))


def finite_difference(m: AnalyticMap, z: complex, cfg: OracleConfig | None = None) -> complex:
    h = (cfg or OracleConfig()).fd_step
    return (evaluate(m, z + h) - evaluate(m, z - h)) / (2.0 * h)
