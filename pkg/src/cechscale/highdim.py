"""Triangles of disk systems in R^d through a planar reduction.

Three balls in R^d meet iff their traces on the plane through the three
centers meet, and that plane can be mapped isometrically onto R^2.  So the
Cech scale of a triple is the planar triplet scale of the projected triple.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import WeightedComplex, lower_nbrs
from .geometry import DimensionError, Disk, DiskSystem, pair_scale_matrix
from .rhomap import DEFAULT_TOL
from .solver import triplet_scales


@dataclass(frozen=True)
class AffineTriple:
    planar_system: DiskSystem
    source_indices: tuple[int, int, int]


def _project_centers(c1, c2, c3):
    """Planar images of batches of centers, each (T, d); returns (T, 3, 2).

    c1 goes to the origin, c2 onto the positive x-axis, c3 to the upper
    half plane.  A center coinciding with c1 maps to the origin.
    """
    u = c2 - c1
    v = c3 - c1
    a = np.sqrt((u * u).sum(axis=-1))
    b = np.sqrt((v * v).sum(axis=-1))
    denom = a * b
    safe = np.where(denom == 0.0, 1.0, denom)
    cos = np.where(denom == 0.0, 1.0, (u * v).sum(axis=-1) / safe)
    cos = np.clip(cos, -1.0, 1.0)
    sin = np.sqrt(1.0 - cos * cos)
    out = np.zeros(c1.shape[:-1] + (3, 2))
    out[..., 1, 0] = a
    out[..., 2, 0] = b * cos
    out[..., 2, 1] = b * sin
    return out


def affine_project(di: Disk, dj: Disk, dk: Disk,
                   source_indices: tuple[int, int, int] = (0, 1, 2)) -> AffineTriple:
    """Map three disks of R^d onto a congruent planar triple, radii unchanged."""
    dims = {di.dim, dj.dim, dk.dim}
    if len(dims) != 1:
        raise DimensionError(f"mixed dimensions {sorted(dims)}")
    if di.dim < 2:
        raise DimensionError(f"affine_project needs d >= 2, got {di.dim}")
    c = [np.array(d.center, dtype=float) for d in (di, dj, dk)]
    planar = _project_centers(*c)
    system = DiskSystem.from_arrays(planar, [di.radius, dj.radius, dk.radius])
    return AffineTriple(system, tuple(int(x) for x in source_indices))


def triangle_scales(system: DiskSystem, triples: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Cech scales of the given index triples of a system in R^d."""
    triples = np.asarray(triples, dtype=int).reshape(-1, 3)
    c, r = system.centers, system.radii
    if system.dim == 2:
        # already planar; skipping the rigid motion keeps weights bit-identical
        planar = c[triples]
    else:
        planar = _project_centers(c[triples[:, 0]], c[triples[:, 1]], c[triples[:, 2]])
    scales, _, _ = triplet_scales(planar, r[triples], tol)
    if system.dim != 2:
        # projected distances can round below the edge weights taken in R^d
        for a, b in ((0, 1), (0, 2), (1, 2)):
            ia, ib = triples[:, a], triples[:, b]
            diff = c[ib] - c[ia]
            dist = np.sqrt((diff * diff).sum(axis=-1))
            scales = np.maximum(scales, dist / (r[ia] + r[ib]))
    return scales


def two_skeleton(system: DiskSystem, lam: float, tol: float = DEFAULT_TOL) -> WeightedComplex:
    """Vertices, edges and triangles of the Cech complex at ``lam`` in R^d."""
    if system.dim < 2:
        raise DimensionError(f"two_skeleton needs d >= 2, got {system.dim}")
    if lam < 0:
        raise ValueError(f"scale must be nonnegative, got {lam}")
    system.require_positive()

    m = len(system)
    scales = pair_scale_matrix(system)
    nbrs = [set(lower_nbrs(system, i, lam, scales)) for i in range(m)]
    entries = {(i,): 0.0 for i in range(m)}
    edges = []
    for i in range(m):
        for j in sorted(nbrs[i]):
            entries[(j, i)] = float(scales[i, j])
            edges.append((j, i))
    edges.sort()

    triples = [(k, j, i) for j, i in edges for k in sorted(nbrs[i] & nbrs[j])]
    if triples:
        weights = triangle_scales(system, np.array(triples), tol)
        for t, w in zip(triples, weights):
            k, j, i = t
            w = max(float(w), entries[(k, j)], entries[(k, i)], entries[(j, i)])
            if w <= lam:
                entries[t] = w
    return WeightedComplex(entries, 2, lam)
