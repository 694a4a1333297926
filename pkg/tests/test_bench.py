import csv
import io

import numpy as np

from cechscale import bench


def test_same_seed_same_systems():
    a = list(bench.system_stream(7, 20, 3))
    b = list(bench.system_stream(7, 20, 3))
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.centers, y.centers)
        np.testing.assert_array_equal(x.radii, y.radii)
    c = next(bench.system_stream(8, 20, 1))
    assert not np.array_equal(a[0].centers, c.centers)


def test_stream_independent_of_other_sizes():
    first = next(bench.system_stream(0, 30, 1))
    list(bench.system_stream(0, 10, 5))
    np.testing.assert_array_equal(next(bench.system_stream(0, 30, 1)).centers, first.centers)


def test_random_system_ranges():
    m = bench.random_system(np.random.default_rng(0), 100, dim=4)
    assert m.centers.shape == (100, 4)
    assert ((m.centers >= 0) & (m.centers <= 1)).all()
    assert ((m.radii >= 0.5) & (m.radii <= 1.5)).all()


def test_run_bench_rows_and_csv():
    rows = bench.run_bench(max_disks=20, repeats=2, dims=(3, 100), step=10)
    assert [(r.kind, r.size, r.algorithm) for r in rows] == [
        ("n_disks", 10, "naive"), ("n_disks", 10, "triplets"),
        ("n_disks", 20, "naive"), ("n_disks", 20, "triplets"),
        ("dim", 3, "skeleton2-preprocess"), ("dim", 100, "skeleton2-preprocess")]
    assert all(r.mean_seconds > 0 for r in rows)
    parsed = list(csv.DictReader(io.StringIO(bench.format_csv(rows))))
    assert tuple(parsed[0]) == bench.CSV_FIELDS
    assert float(parsed[-1]["mean_seconds"]) == float(f"{rows[-1].mean_seconds:.6e}")
