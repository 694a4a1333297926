"""Filtered generalized Cech complex of a planar disk system.

Simplices are strictly increasing tuples of disk indices.  The weight of a
simplex is the scale at which it enters the filtration:

* vertices: 0,
* edges: the pair scale,
* triangles: the Cech scale of the triple,
* larger simplices: the largest facet weight (Helly in the plane).

Expansion follows the lower-neighbour scheme: a simplex grows only by a
disk that precedes all of its vertices and is close to each of them, so
every simplex is produced exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .geometry import DimensionError, DiskSystem, pair_scale_matrix
from .rhomap import DEFAULT_TOL
from .solver import triplet_scales

Simplex = tuple


@dataclass(frozen=True)
class WeightedComplex:
    """Immutable map from simplices to weights, closed under faces."""

    entries: Mapping[Simplex, float]
    max_dim: int
    scale: float = field(default=float("inf"))

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def weight(self, simplex) -> float:
        return self.entries[tuple(simplex)]

    def simplices(self, dim: int | None = None) -> list[Simplex]:
        if dim is None:
            return list(self.entries)
        return [s for s in self.entries if len(s) == dim + 1]

    def sublevel(self, lam: float) -> "WeightedComplex":
        """The simplices of weight at most ``lam``."""
        return WeightedComplex({s: w for s, w in self.entries.items() if w <= lam},
                               self.max_dim, min(lam, self.scale))

    def is_subcomplex_of(self, other: "WeightedComplex") -> bool:
        return all(s in other.entries for s in self.entries)


def check_simplex(simplex) -> Simplex:
    s = tuple(int(v) for v in simplex)
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError(f"simplex vertices must be strictly increasing, got {s}")
    if s[0] < 0:
        raise ValueError(f"negative vertex index in {s}")
    return s


def faces(simplex: Simplex):
    """Proper nonempty faces of a simplex."""
    for k in range(1, len(simplex)):
        yield from combinations(simplex, k)


def lower_nbrs(system: DiskSystem, i: int, lam: float, scales: np.ndarray | None = None) -> list[int]:
    """Indices j < i whose pair scale with disk i is at most ``lam``."""
    if lam < 0:
        raise ValueError(f"scale must be nonnegative, got {lam}")
    if not 0 <= i < len(system):
        raise IndexError(f"disk index {i} out of range")
    if scales is None:
        scales = pair_scale_matrix(system)
    return [int(j) for j in np.flatnonzero(scales[i, :i] <= lam)]


def build_complex(system: DiskSystem, lam: float, dim: int, tol: float = DEFAULT_TOL) -> WeightedComplex:
    """The ``dim``-skeleton of the Cech complex at scale ``lam`` with weights."""
    if dim < 1:
        raise ValueError(f"dim must be at least 1, got {dim}")
    if lam < 0:
        raise ValueError(f"scale must be nonnegative, got {lam}")
    if system.dim != 2:
        raise DimensionError(f"build_complex is planar, got dimension {system.dim}; see two_skeleton")
    system.require_positive()

    m = len(system)
    scales = pair_scale_matrix(system)
    nbrs = [set(lower_nbrs(system, i, lam, scales)) for i in range(m)]
    entries: dict[Simplex, float] = {(i,): 0.0 for i in range(m)}

    level = []
    for i in range(m):
        for j in sorted(nbrs[i]):
            entries[(j, i)] = float(scales[i, j])
            level.append((j, i))
    level.sort()

    for n in range(1, dim):
        candidates = []
        for sigma in level:
            common = set.intersection(*(nbrs[v] for v in sigma))
            candidates.extend((k,) + sigma for k in sorted(common))
        if not candidates:
            break
        if n == 1:
            idx = np.array(candidates)
            c, r = system.centers, system.radii
            weights, _, _ = triplet_scales(c[idx], r[idx], tol)
        else:
            weights = [max(entries.get(f, np.inf) for f in combinations(s, len(s) - 1))
                       for s in candidates]
        level = []
        for s, w in zip(candidates, weights):
            if w <= lam:
                entries[s] = float(w)
                level.append(s)
        level.sort()

    return WeightedComplex(entries, dim, lam)


def filtration_steps(complex_: WeightedComplex) -> list[tuple[float, Simplex]]:
    """Simplices ordered by weight, then dimension, then lexicographically."""
    return sorted(((w, s) for s, w in complex_.entries.items()),
                  key=lambda item: (item[0], len(item[1]), item[1]))


def validate(complex_: WeightedComplex) -> None:
    """Raise ValueError unless the complex is face-closed and weight-monotone."""
    for s, w in complex_.entries.items():
        check_simplex(s)
        if len(s) == 1 and w != 0:
            raise ValueError(f"vertex {s} has weight {w}")
        if w < 0:
            raise ValueError(f"negative weight on {s}")
        for f in faces(s):
            if f not in complex_.entries:
                raise ValueError(f"face {f} of {s} missing")
            if complex_.entries[f] > w:
                raise ValueError(f"face {f} heavier than {s}")
