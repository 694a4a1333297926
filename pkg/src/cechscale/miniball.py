"""Smallest enclosing circle as the Cech scale of unit disks.

Unit disks centered at the points all meet at scale ``lam`` exactly when
some point lies within ``lam`` of every input point.  The Cech scale is then
the radius of the smallest enclosing circle and the witness its center.

This does not carry over to heterogeneous radii: the Cech scale of a general
disk system is not determined by the enclosing ball of its centers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DimensionError, DiskSystem
from .solver import cech_scale


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def contains(self, points, tol: float = 1e-9) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        d = np.sqrt(((pts - self.center) ** 2).sum(axis=-1))
        return d <= self.radius + tol


def miniball(points, workers: int = 1) -> Ball:
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise ValueError("miniball of an empty point set")
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DimensionError(f"miniball expects planar points, got shape {pts.shape}")
    if len(pts) == 1:
        return Ball(pts[0].copy(), 0.0)
    unit = DiskSystem.from_arrays(pts, np.ones(len(pts)))
    res = cech_scale(unit, workers=workers)
    return Ball(np.asarray(res.witness, dtype=float), float(res.cech_scale))
