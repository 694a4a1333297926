"""Disk systems and the pairwise primitives everything else is built from.

A disk system is an ordered collection of closed balls ``D_i(c_i; r_i)`` in
R^d.  Rescaling by ``lam`` multiplies every radius and keeps the centers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class DimensionError(ValueError):
    """Raised when an operation gets disks of the wrong or mixed dimension."""


class DisjointDisksError(ValueError):
    """Raised when two rescaled disks do not meet at the requested scale."""


@dataclass(frozen=True)
class Disk:
    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        center = tuple(float(x) for x in self.center)
        if len(center) < 1:
            raise DimensionError("disk center needs at least one coordinate")
        if not all(math.isfinite(x) for x in center):
            raise ValueError(f"non-finite center {center}")
        radius = float(self.radius)
        # radius 0 is what rescaling by 0 produces; solvers reject it later
        if not (math.isfinite(radius) and radius >= 0):
            raise ValueError(f"invalid radius {self.radius!r}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @property
    def dim(self) -> int:
        return len(self.center)


class DiskSystem:
    """Ordered, immutable list of disks sharing one ambient dimension.

    The index of a disk in the list is its identity; that order is also the
    linear order used for lower neighbours when building complexes.
    Centers and radii are kept as read-only numpy arrays so the solvers can
    work on them vectorised.
    """

    __slots__ = ("centers", "radii")

    def __init__(self, disks: Iterable[Disk]):
        disks = list(disks)
        if not disks:
            raise ValueError("a disk system needs at least one disk")
        dims = {d.dim for d in disks}
        if len(dims) != 1:
            raise DimensionError(f"mixed dimensions {sorted(dims)}")
        centers = np.array([d.center for d in disks], dtype=float)
        radii = np.array([d.radius for d in disks], dtype=float)
        self._freeze(centers, radii)

    def _freeze(self, centers, radii):
        centers.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)

    def __setattr__(self, name, value):
        raise AttributeError("DiskSystem is immutable")

    @classmethod
    def from_arrays(cls, centers, radii) -> "DiskSystem":
        centers = np.array(centers, dtype=float)
        radii = np.array(radii, dtype=float).reshape(-1)
        if centers.ndim == 1:
            centers = centers.reshape(-1, 1)
        if centers.ndim != 2 or centers.shape[1] < 1:
            raise DimensionError(f"centers must be an (m, d) array, got {centers.shape}")
        if len(centers) == 0:
            raise ValueError("a disk system needs at least one disk")
        if len(radii) != len(centers):
            raise ValueError(f"{len(centers)} centers but {len(radii)} radii")
        if not np.all(np.isfinite(centers)):
            raise ValueError("non-finite center coordinate")
        if not np.all(np.isfinite(radii)) or np.any(radii < 0):
            raise ValueError("radii must be finite and nonnegative")
        obj = cls.__new__(cls)
        obj._freeze(centers, radii)
        return obj

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    @property
    def disks(self) -> list[Disk]:
        return [Disk(tuple(c), r) for c, r in zip(self.centers.tolist(), self.radii.tolist())]

    def __len__(self) -> int:
        return len(self.radii)

    def __getitem__(self, i: int) -> Disk:
        return Disk(tuple(self.centers[i].tolist()), float(self.radii[i]))

    def __iter__(self):
        return iter(self.disks)

    def __eq__(self, other):
        if not isinstance(other, DiskSystem):
            return NotImplemented
        return np.array_equal(self.centers, other.centers) and np.array_equal(self.radii, other.radii)

    def __hash__(self):
        return hash((self.centers.tobytes(), self.radii.tobytes()))

    def __repr__(self):
        body = ", ".join(f"(({', '.join(map(repr, c))}), {r!r})"
                         for c, r in zip(self.centers.tolist(), self.radii.tolist()))
        return f"DiskSystem([{body}])"

    def subsystem(self, indices: Sequence[int]) -> "DiskSystem":
        idx = list(indices)
        return DiskSystem.from_arrays(self.centers[idx], self.radii[idx])

    def require_positive(self):
        if np.any(self.radii <= 0):
            raise ValueError("operation requires strictly positive radii")


def rescale(system: DiskSystem, lam: float) -> DiskSystem:
    """Return ``M_lam``: same centers, every radius multiplied by ``lam``."""
    if lam < 0:
        raise ValueError(f"scale must be nonnegative, got {lam}")
    return DiskSystem.from_arrays(system.centers.copy(), system.radii * lam)


def _check_same_dim(a: Disk, b: Disk):
    if a.dim != b.dim:
        raise DimensionError(f"disks of dimension {a.dim} and {b.dim}")


def _dist(p, q) -> float:
    diff = np.asarray(q, dtype=float) - np.asarray(p, dtype=float)
    return float(np.sqrt((diff * diff).sum(axis=-1)))


def pair_scale(a: Disk, b: Disk) -> float:
    """Smallest scale at which the two rescaled disks meet."""
    _check_same_dim(a, b)
    dist = _dist(a.center, b.center)
    if dist == 0.0:
        return 0.0
    return dist / (a.radius + b.radius)


def pair_scale_matrix(system: DiskSystem) -> np.ndarray:
    """Symmetric (m, m) matrix of pair scales, zero on the diagonal."""
    c = system.centers
    diff = c[None, :, :] - c[:, None, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    rsum = system.radii[:, None] + system.radii[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(dist == 0.0, 0.0, dist / rsum)
    return out


def rips_scale(system: DiskSystem) -> float:
    """Vietoris-Rips scale: the largest pair scale, 0 for a single disk."""
    if len(system) < 2:
        return 0.0
    return float(pair_scale_matrix(system).max())


def containment_scale(a: Disk, b: Disk) -> float:
    """Smallest scale at which one rescaled disk contains the other.

    Returns ``math.inf`` for equal radii and distinct centers: the
    boundaries then cross at every scale past :func:`pair_scale`.
    """
    _check_same_dim(a, b)
    dist = _dist(a.center, b.center)
    if dist == 0.0:
        return 0.0
    gap = abs(a.radius - b.radius)
    if gap == 0.0:
        return math.inf
    return dist / gap


def pair_frame(ci, cj, ri, rj) -> tuple:
    """The scale-independent part of :func:`d_points`, for repeated use."""
    ci = np.asarray(ci, dtype=float)
    cj = np.asarray(cj, dtype=float)
    ri = np.asarray(ri, dtype=float)
    rj = np.asarray(rj, dtype=float)

    # work from the lexicographically smaller center so that d_ij and d_ji
    # share every intermediate and differ only in the side taken
    swap = (cj[..., 0] < ci[..., 0]) | ((cj[..., 0] == ci[..., 0]) & (cj[..., 1] < ci[..., 1]))
    px0 = np.where(swap, cj[..., 0], ci[..., 0])
    py0 = np.where(swap, cj[..., 1], ci[..., 1])
    dx = np.where(swap, ci[..., 0], cj[..., 0]) - px0
    dy = np.where(swap, ci[..., 1], cj[..., 1]) - py0
    rp = np.where(swap, rj, ri)
    rq = np.where(swap, ri, rj)
    side = np.where(swap, -1.0, 1.0)

    delta = np.sqrt(dx * dx + dy * dy)
    concentric = delta == 0.0
    safe = np.where(concentric, 1.0, delta)

    gap = np.abs(ri - rj)
    with np.errstate(divide="ignore"):
        frozen_at = np.where(gap == 0.0, np.inf, safe / np.where(gap == 0.0, 1.0, gap))
    ux = dx / safe
    uy = dy / safe
    # concentric pairs sit at c_i; place the base there and zero the offsets
    px0 = np.where(concentric, ci[..., 0], px0)
    py0 = np.where(concentric, ci[..., 1], py0)
    ux = np.where(concentric, 0.0, ux)
    uy = np.where(concentric, 0.0, uy)
    return px0, py0, ux, uy, rp, rq, side, safe, frozen_at


def frame_points(frame: tuple, lam) -> np.ndarray:
    """``d_ij(lam)`` from a :func:`pair_frame`."""
    px0, py0, ux, uy, rp, rq, side, safe, frozen_at = frame
    lam = np.asarray(lam, dtype=float)
    lam_eff = np.minimum(lam, frozen_at)
    big_r = lam_eff * rp
    small_r = lam_eff * rq
    rsum = big_r + small_r
    rdiff = big_r - small_r
    # (d^2 + R^2 - r^2) / 2d without adding d^2 to R^2, which loses d when d << R
    a = 0.5 * (safe + rdiff * rsum / safe)
    # height from the four-factor product; each factor is a single sum, so
    # tangency (a vanishing factor) gives h = 0 cleanly
    prod = (rsum + safe) * (safe + rdiff) * (safe - rdiff) * (rsum - safe)
    h = side * np.sqrt(np.maximum(prod, 0.0)) / (2.0 * safe)
    # the frozen point is the internal tangency point by definition
    h = np.where(lam >= frozen_at, 0.0, h)
    out = np.empty(np.broadcast(px0, rp, lam).shape + (2,))
    out[..., 0] = px0 + a * ux - h * uy
    out[..., 1] = py0 + a * uy + h * ux
    return out


def d_points(ci, cj, ri, rj, lam):
    """Vectorised ``d_ij(lam)`` for planar center/radius arrays.

    ``ci``, ``cj`` have shape (..., 2); ``ri``, ``rj``, ``lam`` broadcast
    against the leading shape.  No domain checks: callers guarantee that the
    rescaled pairs meet.
    """
    return frame_points(pair_frame(ci, cj, ri, rj), lam)


def d_point(a: Disk, b: Disk, lam: float) -> np.ndarray:
    """Boundary intersection of the rescaled disks left of ``c_a -> c_b``.

    Past the containment scale the point stays at its value there (the
    internal tangency point); concentric disks give the common center.
    """
    _check_same_dim(a, b)
    if a.dim != 2:
        raise DimensionError(f"d_point is planar, got dimension {a.dim}")
    if lam < pair_scale(a, b):
        raise DisjointDisksError(
            f"disks disjoint at this scale: {lam} < {pair_scale(a, b)}")
    return d_points(np.array(a.center), np.array(b.center), a.radius, b.radius, lam)


def contains(system: DiskSystem, point, lam: float, rtol: float = 1e-9) -> np.ndarray:
    """Boolean mask: which rescaled disks contain ``point``.

    Membership uses ``|p - c_k| <= lam*r_k + rtol*(1 + lam*r_k)``.
    """
    point = np.asarray(point, dtype=float)
    dist = np.sqrt(((system.centers - point) ** 2).sum(axis=1))
    scaled = lam * system.radii
    return dist <= scaled + rtol * (1.0 + scaled)
