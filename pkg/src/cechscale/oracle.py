"""Brute-force ground truth for tests and example regeneration.

The Cech scale is the optimum of the convex min-max program

    minimise over x:  f(x) = max_i |x - c_i| / r_i

At the optimum at most three ratios are active, so the minimiser is one of
finitely many candidate points:

* a center (one active disk: single or concentric systems),
* the point splitting a center segment in the ratio r_i : r_j (two active),
* a point with equal ratio to three centers (three active).

The oracle evaluates ``f`` at every candidate and keeps the smallest value.
Every value is an upper bound on the optimum, and the true support is among
the candidates, so the minimum is the Cech scale.  Nothing here touches rho,
d-points or bisection.  Cost is O(m^4); correctness only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import DiskSystem

FEASIBLE_SLACK = 1e-9


@dataclass(frozen=True)
class OracleResult:
    scale: float
    minimizer: np.ndarray
    support: tuple[int, ...]


def _max_ratio(points, centers, radii):
    diff = points[:, None, :] - centers[None, :, :]
    return (np.sqrt((diff * diff).sum(axis=-1)) / radii[None, :]).max(axis=1)


def _pair_points(c, r, pairs):
    i, j = pairs[:, 0], pairs[:, 1]
    t = (r[i] / (r[i] + r[j]))[:, None]
    return c[i] + t * (c[j] - c[i])


def _equal_ratio_points(local, r):
    """Points of the plane with |x - p_a| = sqrt(s) * r_a for a = 0, 1, 2.

    ``local`` holds the three centers in planar coordinates.  Shifting p_0
    to the origin makes the two difference equations linear in x for fixed
    ``s``, and the remaining one a quadratic in ``s``.  Returns 0-2 points.
    """
    p = local - local[0]
    mat = np.array([p[1], p[2]])
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    scale = max(float(np.abs(mat).max()), 1e-300)
    if abs(det) <= 1e-14 * scale * scale:
        return []
    inv = np.array([[mat[1, 1], -mat[0, 1]], [-mat[1, 0], mat[0, 0]]]) / det
    u = np.array([p[1] @ p[1], p[2] @ p[2]])
    v = np.array([r[1] ** 2 - r[0] ** 2, r[2] ** 2 - r[0] ** 2])
    x0 = 0.5 * inv @ u
    x1 = 0.5 * inv @ v
    qa = x1 @ x1
    qb = -(2.0 * (x0 @ x1) + r[0] ** 2)
    qc = x0 @ x0
    if qa == 0.0:
        roots = [-qc / qb] if qb != 0.0 else []
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0:
            disc = 0.0
        sq = math.sqrt(disc)
        # stable quadratic formula
        q = -0.5 * (qb + math.copysign(sq, qb))
        roots = [q / qa] + ([qc / q] if q != 0.0 else [])
    return [local[0] + x0 - s * x1 for s in roots if s >= 0]


def _best(points, supports, centers, radii):
    pts = np.asarray(points, dtype=float)
    vals = _max_ratio(pts, centers, radii)
    k = int(np.argmin(vals))
    return float(vals[k]), pts[k], supports[k]


def oracle_cech_scale(system: DiskSystem) -> OracleResult:
    """Cech scale of a planar system by exhaustive support enumeration."""
    c = np.asarray(system.centers, dtype=float)
    r = np.asarray(system.radii, dtype=float)
    if c.shape[1] != 2:
        raise ValueError("the planar oracle needs a planar system")
    m = len(r)
    if m == 1:
        return OracleResult(0.0, c[0].copy(), (0,))

    points = list(c)
    supports: list[tuple[int, ...]] = [(i,) for i in range(m)]
    pairs = np.array(list(itertools.combinations(range(m), 2)))
    points.extend(_pair_points(c, r, pairs))
    supports.extend(tuple(int(x) for x in p) for p in pairs)
    for tri in itertools.combinations(range(m), 3):
        for x in _equal_ratio_points(c[list(tri)], r[list(tri)]):
            points.append(x)
            supports.append(tri)
    scale, x, support = _best(points, supports, c, r)
    return OracleResult(scale, x, support)


def oracle_feasible(system: DiskSystem, lam: float) -> bool:
    """Whether the disks rescaled by ``lam`` share a point, per the oracle."""
    return oracle_cech_scale(system).scale <= lam + FEASIBLE_SLACK


def oracle_cech_scale_triplet_dplane(centers, radii) -> float:
    """Cech scale of three balls in R^d, searched in their centers' plane.

    The plane gets an orthonormal basis from a QR factorisation; candidate
    points are mapped back to R^d and ratios are measured there.
    """
    c = np.asarray(centers, dtype=float)
    r = np.asarray(radii, dtype=float)
    if c.shape[0] != 3 or c.shape[1] < 2:
        raise ValueError("need three centers in R^d, d >= 2")
    basis, _ = np.linalg.qr(np.column_stack([c[1] - c[0], c[2] - c[0]]))
    local = (c - c[0]) @ basis

    points = list(c)
    pairs = np.array([(0, 1), (0, 2), (1, 2)])
    points.extend(_pair_points(c, r, pairs))
    points.extend(c[0] + basis @ x for x in _equal_ratio_points(local, r))
    return float(_max_ratio(np.asarray(points), c, r).min())


def oracle_miniball(points) -> tuple[np.ndarray, float]:
    """Smallest enclosing circle by trying every 2- and 3-point support set."""
    pts = np.asarray(points, dtype=float)
    if len(pts) == 1:
        return pts[0].copy(), 0.0
    best_c, best_r = None, math.inf

    def encloses(center, radius):
        d = np.sqrt(((pts - center) ** 2).sum(axis=1))
        return np.all(d <= radius * (1 + 1e-12) + 1e-12)

    for a, b in itertools.combinations(range(len(pts)), 2):
        center = 0.5 * (pts[a] + pts[b])
        radius = 0.5 * float(np.sqrt(((pts[a] - pts[b]) ** 2).sum()))
        if radius < best_r and encloses(center, radius):
            best_c, best_r = center, radius
    for a, b, k in itertools.combinations(range(len(pts)), 3):
        (ax, ay), (bx, by), (cx, cy) = pts[a], pts[b], pts[k]
        det = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        if det == 0.0:
            continue
        ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay) + (cx**2 + cy**2) * (ay - by)) / det
        uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx) + (cx**2 + cy**2) * (bx - ax)) / det
        center = np.array([ux, uy])
        radius = float(np.sqrt(((pts[a] - center) ** 2).sum()))
        if radius < best_r and encloses(center, radius):
            best_c, best_r = center, radius
    return best_c, best_r
