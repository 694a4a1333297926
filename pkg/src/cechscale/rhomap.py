"""The intersection-quantifying map rho and bisection on it.

For a planar system and scale ``lam``::

    rho(lam) = max over ordered pairs (i, j), i != j, of
               min over k not in {i, j} of  lam*r_k - |d_ij(lam) - c_k|

``rho(lam) >= 0`` exactly when the rescaled disks share a point, so the
Cech scale is where its sign flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import DimensionError, DiskSystem, d_point, d_points, frame_points, pair_frame, rips_scale

DEFAULT_TOL = 1e-12

# (i, j, k) for the six ordered pairs of a triple, lexicographic in (i, j)
TRIPLE_PAIRS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))

# direct evaluation builds a (pairs x m) block; beyond this many cells use
# bound-and-refine
_DIRECT_CELLS = 400_000
_CHUNK_PAIRS = 2048
_PROBE_DISKS = 24


class NoRootBracketedError(ValueError):
    """Raised when the bracket handed to bisection has no sign change."""


@dataclass(frozen=True)
class RhoValue:
    value: float
    argmax_pair: tuple[int, int]
    min_index: int


def _check_planar(system: DiskSystem):
    if system.dim != 2:
        raise DimensionError(f"rho is defined for planar systems, got dimension {system.dim}")


def signed_distance(system: DiskSystem, i: int, j: int, k: int, lam: float) -> float:
    """``lam*r_k - |d_ij(lam) - c_k|``: positive inside the rescaled disk k."""
    _check_planar(system)
    if len({i, j, k}) != 3:
        raise ValueError(f"indices must be distinct, got {(i, j, k)}")
    p = d_point(system[i], system[j], lam)
    diff = p - system.centers[k]
    return float(lam * system.radii[k] - np.sqrt((diff * diff).sum()))


def _ordered_pairs(m: int):
    i, j = np.divmod(np.arange(m * m), m)
    keep = i != j
    return i[keep], j[keep]


def _block(centers, radii, pts, pi, pj, ks, lam):
    """Signed distances of each point to each disk in ``ks``; +inf on i/j."""
    diff_x = pts[:, None, 0] - centers[None, ks, 0]
    diff_y = pts[:, None, 1] - centers[None, ks, 1]
    vals = lam * radii[None, ks] - np.sqrt(diff_x * diff_x + diff_y * diff_y)
    own = (ks[None, :] == pi[:, None]) | (ks[None, :] == pj[:, None])
    return np.where(own, np.inf, vals)


def _probe_set(centers, radii):
    """Disks most likely to exclude a point: smallest and most remote."""
    m = len(radii)
    small = np.argsort(radii, kind="stable")[: _PROBE_DISKS // 2]
    far = np.argsort(-np.sqrt(((centers - centers.mean(axis=0)) ** 2).sum(axis=1)),
                     kind="stable")[: _PROBE_DISKS // 2]
    probe = np.unique(np.concatenate([small, far]))
    return probe[probe < m]


def rho_arrays(centers: np.ndarray, radii: np.ndarray, lam: float) -> tuple[float, int, int, int]:
    """Core of :func:`rho` on raw arrays, without domain checks.

    Returns ``(value, i, j, k)``.  Ties go to the lexicographically smallest
    pair and then the smallest k.
    """
    m = len(radii)
    pi, pj = _ordered_pairs(m)
    pts = d_points(centers[pi], centers[pj], radii[pi], radii[pj], lam)
    ks = np.arange(m)

    if len(pi) * m <= _DIRECT_CELLS:
        block = _block(centers, radii, pts, pi, pj, ks, lam)
        kmin = block.argmin(axis=1)
        inner = block[np.arange(len(pi)), kmin]
        best = int(inner.argmax())
        return float(inner[best]), int(pi[best]), int(pj[best]), int(kmin[best])

    # upper bounds from a few probe disks, then exact minima in bound order;
    # stop once the next bound falls strictly below the best exact value
    probe = _probe_set(centers, radii)
    bound = np.empty(len(pi))
    for start in range(0, len(pi), _CHUNK_PAIRS * 8):
        sl = slice(start, start + _CHUNK_PAIRS * 8)
        bound[sl] = _block(centers, radii, pts[sl], pi[sl], pj[sl], probe, lam).min(axis=1)
    order = np.argsort(-bound, kind="stable")

    best_val = -math.inf
    seen_idx, seen_val, seen_k = [], [], []
    for start in range(0, len(order), _CHUNK_PAIRS):
        idx = order[start:start + _CHUNK_PAIRS]
        if bound[idx[0]] < best_val:
            break
        block = _block(centers, radii, pts[idx], pi[idx], pj[idx], ks, lam)
        kmin = block.argmin(axis=1)
        inner = block[np.arange(len(idx)), kmin]
        seen_idx.append(idx)
        seen_val.append(inner)
        seen_k.append(kmin)
        best_val = max(best_val, float(inner.max()))

    idx = np.concatenate(seen_idx)
    val = np.concatenate(seen_val)
    kk = np.concatenate(seen_k)
    hits = np.flatnonzero(val == best_val)
    pick = hits[np.argmin(idx[hits])]
    return best_val, int(pi[idx[pick]]), int(pj[idx[pick]]), int(kk[pick])


def rho(system: DiskSystem, lam: float) -> RhoValue:
    """Evaluate rho for a planar system of at least three disks."""
    _check_planar(system)
    if len(system) < 3:
        raise ValueError("rho requires at least three disks")
    system.require_positive()
    nu = rips_scale(system)
    # relative slack only absorbs rounding in callers that recompute nu
    if lam < nu * (1.0 - 1e-14):
        raise ValueError(f"scale {lam} below the Rips scale {nu}: outside the domain of rho")
    value, i, j, k = rho_arrays(system.centers, system.radii, lam)
    return RhoValue(value, (i, j), k)


_PI, _PJ, _PK = (np.array(col) for col in zip(*TRIPLE_PAIRS))


def triple_rho(centers: np.ndarray, radii: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """rho for a batch of triples: centers (T, 3, 2), radii (T, 3), lam (T,).

    Per-element arithmetic is identical to :func:`rho_arrays`, so a batch of
    one reproduces the general routine bit for bit.
    """
    return TripleRho(centers, radii)(slice(None), lam)


class TripleRho:
    """Batched triple rho with the pair geometry computed once.

    ``evaluator(index, lam)`` gives rho of the triples at ``index``.
    """

    def __init__(self, centers: np.ndarray, radii: np.ndarray):
        centers = np.asarray(centers, dtype=float)
        radii = np.asarray(radii, dtype=float)
        # all six ordered pairs side by side
        self.frame = pair_frame(centers[:, _PI], centers[:, _PJ], radii[:, _PI], radii[:, _PJ])
        self.ck = centers[:, _PK]
        self.rk = radii[:, _PK]

    def __call__(self, index, lam) -> np.ndarray:
        lam = np.asarray(lam, dtype=float)[:, None]
        frame, ck, rk = self.frame, self.ck, self.rk
        if not (isinstance(index, slice) and index == slice(None)):
            frame = tuple(part[index] for part in frame)
            ck, rk = ck[index], rk[index]
        pts = frame_points(frame, lam)
        dx = pts[..., 0] - ck[..., 0]
        dy = pts[..., 1] - ck[..., 1]
        return (lam * rk - np.sqrt(dx * dx + dy * dy)).max(axis=1)


def triple_witness(centers: np.ndarray, radii: np.ndarray, lam: float) -> np.ndarray:
    """The d-point realising rho for one triple (first maximising pair)."""
    best, point = -np.inf, None
    for i, j, k in TRIPLE_PAIRS:
        p = d_points(centers[i], centers[j], radii[i], radii[j], lam)
        diff = p - centers[k]
        val = lam * radii[k] - np.sqrt((diff * diff).sum())
        if val > best:
            best, point = val, p
    return point


def bisection_root(f: Callable[[float], float], lo: float, hi: float,
                   tol: float = DEFAULT_TOL) -> float:
    """Locate a sign change of ``f`` on ``[lo, hi]`` with ``f(lo) <= 0 <= f(hi)``.

    Keeps ``f(lo) < 0 <= f(hi)`` throughout and returns the upper end once
    the bracket is no wider than ``tol``, so ``f`` is nonnegative at the
    returned value.  ``f(lo) == 0`` returns ``lo``.
    """
    if not lo < hi:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    flo = f(lo)
    if flo == 0:
        return lo
    fhi = f(hi)
    if flo > 0 or fhi < 0:
        raise NoRootBracketedError(f"no root bracketed: f({lo})={flo}, f({hi})={fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def batch_bisection(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray,
                    tol: float = DEFAULT_TOL) -> np.ndarray:
    """Elementwise :func:`bisection_root` for a vectorised ``f``.

    ``f(index, lam)`` evaluates the elements at positions ``index`` at the
    scales ``lam``.  Assumes ``f(lo) < 0 <= f(hi)`` elementwise (callers check).  Each element
    follows exactly the iterates the scalar routine would.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    n = lo.size
    active = np.flatnonzero(hi - lo > tol)
    while active.size:
        a_lo, a_hi = lo[active], hi[active]
        mid = 0.5 * (a_lo + a_hi)
        stuck = (mid <= a_lo) | (mid >= a_hi)
        nonneg = f(slice(None) if active.size == n else active, mid) >= 0
        upd_hi = nonneg & ~stuck
        upd_lo = ~nonneg & ~stuck
        hi[active[upd_hi]] = mid[upd_hi]
        lo[active[upd_lo]] = mid[upd_lo]
        active = active[~stuck]
        active = active[hi[active] - lo[active] > tol]
    return hi
