"""Morton (z-order) codes on the 2^L voxel grid.

Bit layout: for each of the L levels, from most significant triplet to
least, the bits appear in x, y, z order with x most significant.  The z
bit is therefore the least significant of the whole code, so z is the
first axis merged when the code is consumed one bit at a time.
"""

from __future__ import annotations

import numpy as np

from .errors import CodeOutOfRange, CoordinateOutOfRange, DepthOutOfRange

MAX_DEPTH = 21  # 3L <= 63 keeps codes in one 64-bit word


def _check_depth(depth: int) -> None:
    if not 1 <= depth <= MAX_DEPTH:
        raise DepthOutOfRange(f"depth {depth} outside [1, {MAX_DEPTH}]")


def morton_encode(x, y, z, depth: int):
    """Interleave grid coordinates into a 3L-bit Morton code."""
    _check_depth(depth)
    x = np.asarray(x, dtype=np.uint64)
    y = np.asarray(y, dtype=np.uint64)
    z = np.asarray(z, dtype=np.uint64)
    limit = np.uint64(1) << np.uint64(depth)
    if np.any(x >= limit) or np.any(y >= limit) or np.any(z >= limit):
        raise CoordinateOutOfRange(f"coordinate >= 2^{depth}")
    one = np.uint64(1)
    code = np.zeros(np.broadcast(x, y, z).shape, dtype=np.uint64)
    for i in range(depth):
        s = np.uint64(i)
        code |= ((x >> s) & one) << np.uint64(3 * i + 2)
        code |= ((y >> s) & one) << np.uint64(3 * i + 1)
        code |= ((z >> s) & one) << np.uint64(3 * i)
    return code if code.ndim else int(code)


def morton_decode(code, depth: int):
    """Inverse of morton_encode; returns (x, y, z)."""
    _check_depth(depth)
    code = np.asarray(code, dtype=np.uint64)
    if np.any(code >> np.uint64(3 * depth)):
        raise CodeOutOfRange(f"code >= 2^{3 * depth}")
    one = np.uint64(1)
    x = np.zeros(code.shape, dtype=np.uint64)
    y = np.zeros(code.shape, dtype=np.uint64)
    z = np.zeros(code.shape, dtype=np.uint64)
    for i in range(depth):
        s = np.uint64(i)
        x |= ((code >> np.uint64(3 * i + 2)) & one) << s
        y |= ((code >> np.uint64(3 * i + 1)) & one) << s
        z |= ((code >> np.uint64(3 * i)) & one) << s
    if code.ndim:
        return x, y, z
    return int(x), int(y), int(z)
