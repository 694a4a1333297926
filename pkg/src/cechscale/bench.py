"""Timing harness: naive vs triplet solver by disk count, and the planar
reduction by ambient dimension.

Systems come from ``numpy.random.default_rng([seed, size])``, so a given
seed and size always produce the same systems whatever else is run.
Centers are uniform in the unit cube and radii uniform in [0.5, 1.5]; the
disks overlap heavily, which makes rho negative at the Rips scale often
enough that the solvers actually bisect.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .geometry import DiskSystem
from .highdim import triangle_scales
from .solver import cech_scale, cech_scale_naive

CSV_FIELDS = ("kind", "size", "algorithm", "mean_seconds")


@dataclass(frozen=True)
class BenchRow:
    kind: str
    size: int
    algorithm: str
    mean_seconds: float


def random_system(rng: np.random.Generator, m: int, dim: int = 2) -> DiskSystem:
    return DiskSystem.from_arrays(rng.uniform(0.0, 1.0, (m, dim)), rng.uniform(0.5, 1.5, m))


def system_stream(seed: int, size: int, repeats: int, dim: int = 2) -> Iterator[DiskSystem]:
    rng = np.random.default_rng([seed, size, dim])
    for _ in range(repeats):
        yield random_system(rng, size, dim)


def _mean_time(fn, systems) -> float:
    total = 0.0
    for system in systems:
        start = time.perf_counter()
        fn(system)
        total += time.perf_counter() - start
    return total / len(systems)


def bench_sizes(sizes: Sequence[int], repeats: int, seed: int = 0, workers: int = 1) -> list[BenchRow]:
    rows = []
    for m in sizes:
        systems = list(system_stream(seed, m, repeats))
        rows.append(BenchRow("n_disks", m, "naive", _mean_time(cech_scale_naive, systems)))
        rows.append(BenchRow("n_disks", m, "triplets",
                             _mean_time(lambda s: cech_scale(s, workers=workers), systems)))
    return rows


def bench_dims(dims: Sequence[int], repeats: int, seed: int = 0) -> list[BenchRow]:
    """Mean time to project one triple of balls in R^d and solve it."""
    rows = []
    triple = np.array([[0, 1, 2]])
    for d in dims:
        systems = list(system_stream(seed, 3, repeats, d))
        rows.append(BenchRow("dim", d, "skeleton2-preprocess",
                             _mean_time(lambda s: triangle_scales(s, triple), systems)))
    return rows


def run_bench(max_disks: int = 500, repeats: int = 3, dims: Sequence[int] = (),
              seed: int = 0, step: int = 10, workers: int = 1) -> list[BenchRow]:
    sizes = range(step, max_disks + 1, step)
    return bench_sizes(sizes, repeats, seed, workers) + bench_dims(dims, repeats, seed)


def format_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([row.kind, row.size, row.algorithm, f"{row.mean_seconds:.6e}"])
    return buf.getvalue()
