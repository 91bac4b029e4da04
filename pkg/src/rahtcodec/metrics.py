"""Rate, distortion and zero-run statistics.

PSNR-Y is computed on the real-valued luminance of occupied voxels,
before any uint8 rounding, with peak 255.  `rd_sweep` runs the full
codec over a Q x ordering-mode grid and can emit its rows as CSV.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import container
from .cloud_io import VoxelCloud
from .errors import EmptyStream, GeometryMismatch
from .ordering import OrderingMode

LOSSLESS = math.inf


@dataclass(frozen=True)
class RdPoint:
    cloud: str
    q: float
    mode: OrderingMode
    bpv: float
    psnr_y: float
    avg_zero_run: float  # mean of the three per-channel averages


def psnr_y(original: VoxelCloud, reconstructed: VoxelCloud) -> float:
    """Luminance PSNR in dB over occupied voxels; inf when lossless."""
    if original.depth != reconstructed.depth or \
            not np.array_equal(original.morton, reconstructed.morton):
        raise GeometryMismatch("clouds cover different voxel sets")
    mse = float(np.mean((original.yuv[:, 0] - reconstructed.yuv[:, 0]) ** 2))
    if mse == 0.0:
        return LOSSLESS
    return 10.0 * math.log10(255.0 ** 2 / mse)


def avg_zero_run(symbols) -> float:
    """Mean length of maximal zero runs; 0 when there are no zeros."""
    symbols = np.asarray(symbols)
    if symbols.size == 0:
        raise EmptyStream("no symbols")
    zero = np.concatenate(([False], symbols == 0, [False]))
    starts = np.flatnonzero(zero[1:] & ~zero[:-1])
    ends = np.flatnonzero(~zero[1:] & zero[:-1])
    if len(starts) == 0:
        return 0.0
    return float(np.mean(ends - starts))


def rd_sweep(cloud: VoxelCloud, qs, modes, name: str = "cloud") -> list:
    """Encode/decode over the full Q x mode grid; rows sorted by (mode, Q)."""
    points = []
    for mode in sorted(OrderingMode(m) for m in modes):
        for q in sorted(qs):
            stream = container.encode(cloud, q, mode)
            recon = container.decode(stream, cloud.morton)
            syms = container.encoded_symbols(cloud, q, mode)
            runs = float(np.mean([avg_zero_run(syms[:, ch]) for ch in range(3)]))
            points.append(RdPoint(cloud=name, q=q, mode=mode,
                                  bpv=stream.bits_per_voxel,
                                  psnr_y=psnr_y(cloud, recon),
                                  avg_zero_run=runs))
    return points


def write_csv(points, path_or_file) -> None:
    """Emit sweep rows as CSV: cloud,Q,mode,bpv,psnr_y,avg_zero_run."""
    def _emit(f):
        f.write("cloud,Q,mode,bpv,psnr_y,avg_zero_run\n")
        for p in points:
            psnr = "inf" if math.isinf(p.psnr_y) else f"{p.psnr_y:.6g}"
            f.write(f"{p.cloud},{p.q:g},{p.mode.label},{p.bpv:.6g},"
                    f"{psnr},{p.avg_zero_run:.6g}\n")

    if isinstance(path_or_file, io.IOBase) or hasattr(path_or_file, "write"):
        _emit(path_or_file)
    else:
        with open(path_or_file, "w", encoding="utf-8") as f:
            _emit(f)


def read_csv(path_or_file) -> list:
    """Load rows written by write_csv back into RdPoint values."""
    def _parse(f):
        rows = []
        header = f.readline()
        assert header.strip() == "cloud,Q,mode,bpv,psnr_y,avg_zero_run"
        for line in f:
            if not line.strip():
                continue
            name, q, mode, bpv, psnr, runs = line.strip().split(",")
            rows.append(RdPoint(cloud=name, q=float(q),
                                mode=OrderingMode.from_name(mode),
                                bpv=float(bpv), psnr_y=float(psnr),
                                avg_zero_run=float(runs)))
        return rows

    if hasattr(path_or_file, "read"):
        return _parse(path_or_file)
    with open(path_or_file, "r", encoding="utf-8") as f:
        return _parse(f)
