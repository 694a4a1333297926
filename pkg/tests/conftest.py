import math

import numpy as np
import pytest
from hypothesis import strategies as st

from cechscale.geometry import DiskSystem

SQRT3 = math.sqrt(3.0)
CECH_EQUILATERAL = 2.0 / SQRT3


def equilateral() -> DiskSystem:
    return DiskSystem.from_arrays([(0.0, 0.0), (2.0, 0.0), (1.0, SQRT3)], [1.0, 1.0, 1.0])


def reference_triple() -> DiskSystem:
    return DiskSystem.from_arrays([(-3.0, 4.0), (1.0, 3.0), (2.0, -1.0)], [4.0, 3.0, 2.0])


def five_disks() -> DiskSystem:
    return DiskSystem.from_arrays(
        [(2.99, 0.56), (0.99, 0.11), (1.69, 1.30), (1.07, 1.93), (1.96, 2.64)],
        [1.5, 1.0, 0.6, 0.4, 0.8])


def coaxal_two_root() -> DiskSystem:
    """Collinear triple whose rho vanishes on the whole bracket.

    Two coincident disks plus their mirror image: at scale 1 all boundaries
    pass through (0, +-1), at the Rips scale 2/sqrt(5) they touch at the
    origin, and rho is zero at both.
    """
    r = math.sqrt(5.0)
    return DiskSystem.from_arrays([(-2.0, 0.0), (-2.0, 0.0), (2.0, 0.0)], [r, r, r])


def random_system(rng: np.random.Generator, m: int | None = None) -> DiskSystem:
    if m is None:
        m = int(rng.integers(3, 11))
    return DiskSystem.from_arrays(rng.uniform(0.0, 10.0, (m, 2)), rng.uniform(0.2, 3.0, m))


def random_systems(seed: int, count: int, m: int | None = None) -> list[DiskSystem]:
    rng = np.random.default_rng(seed)
    return [random_system(rng, m) for _ in range(count)]


def random_rotation(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))


@st.composite
def disk_systems(draw, min_size=3, max_size=7, dim=2):
    m = draw(st.integers(min_size, max_size))
    coord = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
    centers = draw(st.lists(st.tuples(*[coord] * dim), min_size=m, max_size=m, unique=True))
    radii = draw(st.lists(st.floats(0.2, 3.0), min_size=m, max_size=m))
    return DiskSystem.from_arrays(centers, radii)


@pytest.fixture
def eq_system():
    return equilateral()
