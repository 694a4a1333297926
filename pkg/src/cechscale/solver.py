"""Cech scale of planar disk systems.

Three solvers share the same contract:

* :func:`cech_scale_triplet` -- exactly three disks, one bisection at most.
* :func:`cech_scale_naive` -- bisection on rho of the whole system, with a
  check that the root found really is the first one.
* :func:`cech_scale` -- the maximum of the triplet scales over all triples
  (Helly in the plane), skipping triples that cannot raise the maximum.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rhomap as _rho
from .geometry import DimensionError, DiskSystem, d_points, pair_scale_matrix, rips_scale
from .rhomap import DEFAULT_TOL, TripleRho, batch_bisection, rho_arrays, triple_rho, triple_witness

RIPS_BOUND_2D = math.sqrt(4.0 / 3.0)

MEMBERSHIP_RTOL = 1e-9
CLUSTER_TOL = 1e-7

# grid search for a positive rho below a spurious root: 32, 64, ... points
_GRID_START = 32
_GRID_MAX = 1024

# triples handled per vectorised batch in cech_scale
_BATCH = 4096


class Status(enum.Enum):
    RIPS_EQUALS_CECH = "RipsEqualsCech"
    ROOT_FOUND = "RootFound"


@dataclass(frozen=True)
class ScaleResult:
    cech_scale: float
    witness: np.ndarray
    rips_scale: float
    bisection_calls: int
    status: Status


def _require_planar(system: DiskSystem):
    if system.dim != 2:
        raise DimensionError(f"planar solver, got dimension {system.dim}")
    system.require_positive()


def _upper_bracket(nu: np.ndarray) -> np.ndarray:
    return RIPS_BOUND_2D * nu


def triplet_scales(centers: np.ndarray, radii: np.ndarray, tol: float = DEFAULT_TOL):
    """Cech scales of a batch of planar triples.

    ``centers`` is (T, 3, 2), ``radii`` (T, 3).  Returns ``(scales, nu,
    bisected)`` where ``bisected`` marks the triples whose Rips scale was not
    already a Cech scale.
    """
    centers = np.asarray(centers, dtype=float)
    radii = np.asarray(radii, dtype=float)
    nu = np.zeros(len(radii))
    for a, b in ((0, 1), (0, 2), (1, 2)):
        diff = centers[:, b] - centers[:, a]
        dist = np.sqrt((diff * diff).sum(axis=-1))
        with np.errstate(divide="ignore", invalid="ignore"):
            nu = np.maximum(nu, np.where(dist == 0.0, 0.0, dist / (radii[:, a] + radii[:, b])))

    scales = nu.copy()
    at_nu = triple_rho(centers, radii, nu)
    need = np.flatnonzero((at_nu < 0) & (nu > 0))
    if need.size:
        sub_c, sub_r = centers[need], radii[need]
        lo = nu[need]
        hi = _upper_bracket(lo)
        # the bound is attained by tangent equal triples; rounding can leave
        # rho a hair below zero there, so nudge the upper end by a few ulps
        f = TripleRho(sub_c, sub_r)
        at_hi = f(slice(None), hi)
        for _ in range(64):
            low = at_hi < 0
            if not low.any():
                break
            hi[low] = np.nextafter(hi[low] * (1 + 2e-16), np.inf)
            at_hi[low] = f(low, hi[low])
        else:
            raise _rho.NoRootBracketedError("rho negative at sqrt(4/3) times the Rips scale")
        scales[need] = batch_bisection(f, lo, hi, tol)
    bisected = np.zeros(len(radii), dtype=bool)
    bisected[need] = True
    return scales, nu, bisected


def cech_scale_triplet(system: DiskSystem, tol: float = DEFAULT_TOL) -> ScaleResult:
    """Cech scale and witness of a planar system of exactly three disks."""
    if len(system) != 3:
        raise ValueError(f"triplet solver needs exactly three disks, got {len(system)}")
    _require_planar(system)
    c = np.asarray(system.centers)
    r = np.asarray(system.radii)
    scales, nu, bisected = triplet_scales(c[None], r[None], tol)
    mu = float(scales[0])
    if nu[0] == 0.0:
        witness = c[0].copy()
    else:
        witness = triple_witness(c, r, mu)
    status = Status.ROOT_FOUND if bisected[0] else Status.RIPS_EQUALS_CECH
    return ScaleResult(mu, witness, float(nu[0]), int(bisected[0]), status)


def _small_system(system: DiskSystem) -> ScaleResult | None:
    """Handle one or two disks, and fully concentric systems."""
    c, r = system.centers, system.radii
    if len(system) == 1:
        return ScaleResult(0.0, c[0].copy(), 0.0, 0, Status.RIPS_EQUALS_CECH)
    nu = rips_scale(system)
    if nu == 0.0:
        return ScaleResult(0.0, c[0].copy(), 0.0, 0, Status.RIPS_EQUALS_CECH)
    if len(system) == 2:
        witness = d_points(c[0], c[1], r[0], r[1], nu)
        return ScaleResult(nu, witness, nu, 0, Status.RIPS_EQUALS_CECH)
    return None


def intersection_points(system: DiskSystem, lam: float,
                        rtol: float = MEMBERSHIP_RTOL) -> np.ndarray:
    """All d-points at ``lam`` that lie in every rescaled disk, shape (n, 2)."""
    c, r = system.centers, system.radii
    m = len(r)
    pi, pj = _rho._ordered_pairs(m)
    pts = d_points(c[pi], c[pj], r[pi], r[pj], lam)
    scaled = lam * r
    keep = np.ones(len(pts), dtype=bool)
    for start in range(0, len(pts), 4096):
        sl = slice(start, start + 4096)
        dx = pts[sl, None, 0] - c[None, :, 0]
        dy = pts[sl, None, 1] - c[None, :, 1]
        dist = np.sqrt(dx * dx + dy * dy)
        keep[sl] = np.all(dist <= scaled + rtol * (1.0 + scaled), axis=1)
    return pts[keep]


def count_clusters(points: np.ndarray, tol: float = CLUSTER_TOL) -> int:
    """Number of groups of points, linking points closer than ``tol``."""
    if len(points) == 0:
        return 0
    remaining = np.asarray(points, dtype=float)
    count = 0
    while len(remaining):
        count += 1
        members = np.zeros(len(remaining), dtype=bool)
        members[0] = True
        frontier = remaining[:1]
        while len(frontier):
            d = np.sqrt(((remaining[None, :, :] - frontier[:, None, :]) ** 2).sum(-1))
            near = (d <= tol).any(axis=0) & ~members
            members |= near
            frontier = remaining[near]
        remaining = remaining[~members]
    return count


def _find_positive(f, lo: float, hi: float) -> float | None:
    n = _GRID_START
    while n <= _GRID_MAX:
        for t in np.linspace(lo, hi, n + 2)[1:-1]:
            if f(float(t)) > 0:
                return float(t)
        n *= 2
    return None


def _witness(system: DiskSystem, lam: float) -> np.ndarray:
    """d-point realising rho(lam); lies in every rescaled disk when rho >= 0."""
    c, r = system.centers, system.radii
    _, i, j, _ = rho_arrays(c, r, lam)
    return d_points(c[i], c[j], r[i], r[j], lam)


def cech_scale_naive(system: DiskSystem, tol: float = DEFAULT_TOL) -> ScaleResult:
    """Bisection on the rho map of the whole system.

    After each bisection the d-points common to all rescaled disks are
    collected; more than one cluster means the root is not the Cech scale,
    and the bracket is shrunk to a scale where rho is already positive.
    """
    _require_planar(system)
    done = _small_system(system)
    if done is not None:
        return done
    c, r = system.centers, system.radii
    nu = rips_scale(system)

    def f(lam):
        return rho_arrays(c, r, lam)[0]

    if f(nu) >= 0:
        return ScaleResult(nu, _witness(system, nu), nu, 0, Status.RIPS_EQUALS_CECH)

    hi = RIPS_BOUND_2D * nu
    for _ in range(64):
        if f(hi) >= 0:
            break
        hi = float(np.nextafter(hi * (1 + 2e-16), np.inf))
    else:
        raise _rho.NoRootBracketedError("rho negative at sqrt(4/3) times the Rips scale")
    calls = 0
    while True:
        mu = _rho.bisection_root(f, nu, hi, tol)
        calls += 1
        common = intersection_points(system, mu)
        # d-points carry rounding proportional to the size of the picture
        spread = CLUSTER_TOL * (1.0 + mu * float(r.max()) + float(np.abs(c).max()))
        if count_clusters(common, spread) <= 1:
            break
        better = _find_positive(f, nu, mu)
        if better is None or not better < mu:
            # no positive rho strictly below: the clusters are rounding artefacts
            break
        hi = better
    return ScaleResult(mu, _witness(system, mu), nu, calls, Status.ROOT_FOUND)


def _triples_block(i: int, m: int):
    j, k = np.triu_indices(m - i - 1, k=1)
    return np.column_stack([np.full(len(j), i), j + i + 1, k + i + 1])


def _all_triples(m: int):
    for i in range(m - 2):
        block = _triples_block(i, m)
        for start in range(0, len(block), _BATCH):
            yield block[start:start + _BATCH]


def cech_scale(system: DiskSystem, tol: float = DEFAULT_TOL, prune: bool = True,
               workers: int = 1) -> ScaleResult:
    """Cech scale as the largest triplet Cech scale.

    Triples are visited in order ``i < j < k``.  With ``prune`` a triple is
    skipped when ``sqrt(4/3) * nu_N`` is below the running maximum, or when
    rho of the triple is already nonnegative at the running maximum; neither
    can change the result.  ``workers > 1`` evaluates blocks of triples on a
    thread pool and prunes against the Rips scale only.
    """
    _require_planar(system)
    done = _small_system(system)
    if done is not None:
        return done
    c, r = system.centers, system.radii
    nu = rips_scale(system)
    if rho_arrays(c, r, nu)[0] >= 0:
        return ScaleResult(nu, _witness(system, nu), nu, 0, Status.RIPS_EQUALS_CECH)

    scales = pair_scale_matrix(system)

    def solve_block(block, floor):
        tc, tr = c[block], r[block]
        if prune:
            nu_n = np.maximum(np.maximum(scales[block[:, 0], block[:, 1]],
                                         scales[block[:, 0], block[:, 2]]),
                              scales[block[:, 1], block[:, 2]])
            cand = np.flatnonzero(RIPS_BOUND_2D * nu_n >= floor)
            # floor >= nu_M >= nu_N, and rho_N(floor) >= 0 means mu_N <= floor
            if cand.size:
                cand = cand[triple_rho(tc[cand], tr[cand], np.full(cand.size, floor)) < 0]
            block, tc, tr = block[cand], tc[cand], tr[cand]
        if len(block) == 0:
            return None, -math.inf, 0
        vals, _, bisected = triplet_scales(tc, tr, tol)
        best = int(np.argmax(vals))
        return block[best], float(vals[best]), int(bisected.sum())

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda b: solve_block(b, nu), _all_triples(len(r))))
    else:
        results, floor = [], nu
        for block in _all_triples(len(r)):
            res = solve_block(block, floor)
            results.append(res)
            floor = max(floor, res[1])

    mu, best_triple, calls = nu, None, 0
    for triple, val, n in results:
        calls += n
        if triple is not None and (val > mu or best_triple is None and val >= mu):
            mu, best_triple = val, triple

    witness = None
    if best_triple is not None:
        # prefer a d-point of the maximising triple when it passes the
        # membership test for the whole system
        tc, tr = c[best_triple], r[best_triple]
        for i, j, _ in _rho.TRIPLE_PAIRS:
            p = d_points(tc[i], tc[j], tr[i], tr[j], mu)
            diff_sq = ((c - p) ** 2).sum(axis=1)
            scaled = mu * r
            if np.all(np.sqrt(diff_sq) <= scaled + MEMBERSHIP_RTOL * (1.0 + scaled)):
                witness = p
                break
    if witness is None:
        witness = _witness(system, mu)
    return ScaleResult(mu, witness, nu, calls, Status.ROOT_FOUND)
