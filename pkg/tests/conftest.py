import numpy as np

import rahtcodec as rc


def random_cloud(rng, depth=None, max_voxels=200):
    """Random voxel cloud with uniform occupancy and uniform YUV values."""
    if depth is None:
        depth = int(rng.integers(2, 7))
    total = 1 << (3 * depth)
    n = int(rng.integers(1, min(max_voxels, total) + 1))
    codes = rng.choice(total, size=n, replace=False).astype(np.uint64)
    codes.sort()
    yuv = rng.uniform(0.0, 255.0, size=(n, 3))
    return rc.VoxelCloud(depth=depth, morton=codes, yuv=yuv)


def random_raw_cloud(rng, n=None):
    if n is None:
        n = int(rng.integers(1, 500))
    xyz = rng.uniform(-50.0, 50.0, size=(n, 3))
    rgb = rng.integers(0, 256, size=(n, 3)).astype(np.float64)
    return rc.RawPointCloud(xyz=xyz, rgb=rgb)
