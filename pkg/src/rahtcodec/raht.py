"""Region-adaptive hierarchical transform.

Each sibling pair passes through a weight-adaptive orthonormal butterfly:

    lo = ( sqrt(w1)*a + sqrt(w2)*b) / sqrt(w1 + w2)
    hi = (-sqrt(w2)*a + sqrt(w1)*b) / sqrt(w1 + w2)

where `a` is the Morton-earlier sibling and w1, w2 count the voxels each
side accumulated.  With equal weights this is the plain Haar step.  The
map is orthonormal, so energy is conserved and the inverse is the
transpose.  High-pass outputs are collected as coefficients tagged with
the level (depth) and combined weight of their pair step; the surviving
root low-pass is the DC at traversal index 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloud_io import VoxelCloud
from .errors import ScheduleMismatch
from .octree import MergeSchedule


@dataclass(frozen=True)
class CoefficientSet:
    """Transform output in traversal order.

    `values[t]` holds the (Y, U, V) triple of the coefficient with
    traversal index t; `weight` and `depth` are shared by all channels
    because they derive from geometry alone.
    """

    values: np.ndarray  # (N, 3) float64
    weight: np.ndarray  # (N,) int64
    depth: np.ndarray   # (N,) int64

    def __len__(self):
        return self.values.shape[0]


def butterfly_forward(a: float, b: float, w1: int, w2: int) -> tuple[float, float]:
    s1, s2 = math.sqrt(w1), math.sqrt(w2)
    d = math.sqrt(w1 + w2)
    return (s1 * a + s2 * b) / d, (-s2 * a + s1 * b) / d


def butterfly_inverse(lo: float, hi: float, w1: int, w2: int) -> tuple[float, float]:
    s1, s2 = math.sqrt(w1), math.sqrt(w2)
    d = math.sqrt(w1 + w2)
    return (s1 * lo - s2 * hi) / d, (s2 * lo + s1 * hi) / d


def forward(cloud: VoxelCloud, schedule: MergeSchedule) -> CoefficientSet:
    """Run the forward transform over all three channels at once."""
    if schedule.n_voxels != len(cloud) or schedule.depth != cloud.depth:
        raise ScheduleMismatch(
            f"schedule for {schedule.n_voxels} voxels at depth {schedule.depth}, "
            f"cloud has {len(cloud)} at depth {cloud.depth}")
    vals = cloud.yuv.astype(np.float64).copy()
    coeff = np.empty((len(cloud), 3))
    for plan in schedule.levels:
        if len(plan.pair_pos):
            a = vals[plan.pair_pos]
            b = vals[plan.pair_pos + 1]
            s1 = np.sqrt(plan.w_left)[:, None]
            s2 = np.sqrt(plan.w_right)[:, None]
            d = np.sqrt(plan.w_left + plan.w_right)[:, None]
            coeff[plan.pair_tidx] = (-s2 * a + s1 * b) / d
            vals[plan.pair_pos] = (s1 * a + s2 * b) / d
        vals = vals[plan.keep]
    coeff[0] = vals[0]
    return CoefficientSet(values=coeff, weight=schedule.coef_weight,
                          depth=schedule.coef_depth)


def inverse(coeffs: CoefficientSet, schedule: MergeSchedule) -> np.ndarray:
    """Invert the transform; returns (N, 3) YUV values in Morton order."""
    if len(coeffs) != schedule.n_voxels:
        raise ScheduleMismatch(
            f"{len(coeffs)} coefficients for a {schedule.n_voxels}-voxel schedule")
    vals = coeffs.values[0:1].astype(np.float64).copy()
    for plan in reversed(schedule.levels):
        expanded = np.empty((plan.size, 3))
        expanded[plan.keep] = vals
        if len(plan.pair_pos):
            lo = expanded[plan.pair_pos].copy()
            hi = coeffs.values[plan.pair_tidx]
            s1 = np.sqrt(plan.w_left)[:, None]
            s2 = np.sqrt(plan.w_right)[:, None]
            d = np.sqrt(plan.w_left + plan.w_right)[:, None]
            expanded[plan.pair_pos] = (s1 * lo - s2 * hi) / d
            expanded[plan.pair_pos + 1] = (s2 * lo + s1 * hi) / d
        vals = expanded
    return vals
