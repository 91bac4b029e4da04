"""Seeded synthetic voxel clouds for experiments and tests.

Occupancy is a uniform random subset of the 2^L grid at the requested
fill fraction.  Color kinds:

* constant - one fixed color everywhere (all high-passes vanish)
* gradient - gray ramp along x + y + z plus a seeded multiscale texture
  whose amplitude decays with spatial frequency, the desk-scale stand-in
  for natural content (smooth trend, scale-decaying detail)
* noise    - independent uniform colors (incompressible)
"""

from __future__ import annotations

import numpy as np

from .cloud_io import VoxelCloud, _yuv_matrix
from .errors import DepthOutOfRange
from .morton import MAX_DEPTH, morton_decode

KINDS = ("constant", "gradient", "noise")
CONSTANT_RGB = (96.0, 160.0, 208.0)
TEXTURE_SIGMA = 45.0   # texture std-dev at the coarsest octree level
TEXTURE_DECAY = 0.6    # amplitude factor per finer octree level


def _sample_occupancy(depth: int, fill: float, rng: np.random.Generator) -> np.ndarray:
    total = 1 << (3 * depth)
    n = max(1, int(round(fill * total)))
    if total <= 1 << 24:
        codes = rng.choice(total, size=n, replace=False).astype(np.uint64)
        codes.sort()
        return codes
    # huge grids: draw with margin and deduplicate
    codes = np.zeros(0, dtype=np.uint64)
    while len(codes) < n:
        draw = rng.integers(0, total, size=2 * n, dtype=np.uint64)
        codes = np.unique(np.concatenate([codes, draw]))
    return codes[:n]


def generate_cloud(kind: str, depth: int, fill: float, seed: int) -> VoxelCloud:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if not 1 <= depth <= MAX_DEPTH:
        raise DepthOutOfRange(f"depth {depth} outside [1, {MAX_DEPTH}]")
    if not 0.0 < fill <= 1.0:
        raise ValueError("fill fraction must be in (0, 1]")

    rng = np.random.default_rng(seed)
    codes = _sample_occupancy(depth, fill, rng)
    n = len(codes)

    if kind == "constant":
        rgb = np.tile(CONSTANT_RGB, (n, 1))
    elif kind == "gradient":
        x, y, z = morton_decode(codes, depth)
        span = 3 * ((1 << depth) - 1)
        gray = (x + y + z).astype(np.float64) / span * 255.0
        # one Gaussian draw per occupied octree cell at each scale, with
        # amplitude shrinking toward finer scales (1/f-like texture)
        for d in range(1, depth + 1):
            cell = codes >> np.uint64(3 * (depth - d))
            uniq, inv = np.unique(cell, return_inverse=True)
            octave_rng = np.random.default_rng((seed, d))
            sigma = TEXTURE_SIGMA * TEXTURE_DECAY ** (d - 1)
            gray = gray + octave_rng.normal(0.0, sigma, size=len(uniq))[inv]
        gray = np.clip(gray, 0.0, 255.0)
        rgb = np.repeat(gray[:, None], 3, axis=1)
    else:
        rgb = rng.integers(0, 256, size=(n, 3)).astype(np.float64)

    return VoxelCloud(depth=depth, morton=codes, yuv=_yuv_matrix(rgb))
