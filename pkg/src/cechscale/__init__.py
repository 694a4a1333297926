"""Cech scale of disk systems with heterogeneous radii."""

from .complex import WeightedComplex, build_complex, filtration_steps, lower_nbrs
from .geometry import (DimensionError, Disk, DiskSystem, DisjointDisksError, containment_scale,
                       d_point, pair_scale, rescale, rips_scale)
from .highdim import AffineTriple, affine_project, two_skeleton
from .miniball import Ball, miniball
from .rhomap import NoRootBracketedError, RhoValue, bisection_root, rho, signed_distance
from .solver import ScaleResult, Status, cech_scale, cech_scale_naive, cech_scale_triplet

__all__ = [
    "AffineTriple", "Ball", "DimensionError", "Disk", "DiskSystem", "DisjointDisksError",
    "NoRootBracketedError", "RhoValue", "ScaleResult", "Status", "WeightedComplex",
    "affine_project", "bisection_root", "build_complex", "cech_scale", "cech_scale_naive",
    "cech_scale_triplet", "containment_scale", "d_point", "filtration_steps", "lower_nbrs",
    "miniball", "pair_scale", "rescale", "rho", "rips_scale", "signed_distance", "two_skeleton",
]
