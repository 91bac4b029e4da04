"""Uniform scalar quantizer and signed-to-unsigned zigzag map.

Rounding is half away from zero so the quantizer is odd-symmetric:
quantize(-c) == -quantize(c).  All functions accept scalars or numpy
arrays and return the matching kind.
"""

from __future__ import annotations

import numpy as np


def quantize(c, q: float):
    """round(c / q) with ties going away from zero."""
    if q <= 0:
        raise ValueError("quantizer step must be positive")
    c = np.asarray(c, dtype=np.float64)
    out = (np.sign(c) * np.floor(np.abs(c) / q + 0.5)).astype(np.int64)
    return out if out.ndim else int(out)


def dequantize(level, q: float):
    """Midtread reconstruction level * q."""
    if q <= 0:
        raise ValueError("quantizer step must be positive")
    out = np.asarray(level, dtype=np.float64) * q
    return out if out.ndim else float(out)


def zigzag(level):
    """Map signed integers onto nonnegative ones: 0,-1,1,-2,2 -> 0,1,2,3,4."""
    level = np.asarray(level, dtype=np.int64)
    out = np.where(level >= 0, 2 * level, -2 * level - 1)
    return out if out.ndim else int(out)


def unzigzag(u):
    """Exact inverse of zigzag."""
    u = np.asarray(u, dtype=np.int64)
    out = np.where(u % 2 == 0, u // 2, -(u + 1) // 2)
    return out if out.ndim else int(out)
