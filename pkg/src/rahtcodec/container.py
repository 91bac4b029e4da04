"""Bitstream container and the end-to-end encode/decode pipelines.

Layout: a fixed header, optionally the raw Morton geometry (u64 LE per
voxel), then three independent RLGR payloads for Y, U, V.  The header
fields are magic "RAHT", version u8, octree depth u8, ordering mode u8,
flags u8 (bit 0: geometry bundled), quantizer step f64 LE, voxel count
u64 LE and the three payload byte lengths as u64 LE.

Reported rate counts header plus payloads; bundled geometry is side
information and excluded.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .cloud_io import VoxelCloud
from .errors import (
    GeometryMismatch,
    MalformedHeader,
    TruncatedStream,
    UnknownOrderingMode,
)
from .octree import build_schedule, schedule_from_morton
from .ordering import OrderingMode, make_permutation
from .quant import dequantize, quantize, unzigzag, zigzag
from .raht import CoefficientSet, forward, inverse
from .rlgr import rlgr_decode, rlgr_encode

MAGIC = b"RAHT"
VERSION = 1
_HEADER_FMT = "<4sBBBBdQQQQ"
HEADER_LEN = struct.calcsize(_HEADER_FMT)  # 48 bytes
FLAG_BUNDLED_GEOMETRY = 0x01


@dataclass(frozen=True)
class StreamHeader:
    depth: int
    mode: OrderingMode
    bundle_geometry: bool
    q: float
    n_voxels: int
    payload_lengths: tuple

    def pack(self) -> bytes:
        flags = FLAG_BUNDLED_GEOMETRY if self.bundle_geometry else 0
        return struct.pack(_HEADER_FMT, MAGIC, VERSION, self.depth,
                           int(self.mode), flags, self.q, self.n_voxels,
                           *self.payload_lengths)

    @classmethod
    def unpack(cls, data: bytes) -> "StreamHeader":
        if len(data) < HEADER_LEN:
            raise TruncatedStream(f"header needs {HEADER_LEN} bytes, got {len(data)}")
        magic, version, depth, mode, flags, q, n, l0, l1, l2 = \
            struct.unpack_from(_HEADER_FMT, data)
        if magic != MAGIC:
            raise MalformedHeader(f"bad magic {magic!r}")
        if version != VERSION:
            raise MalformedHeader(f"unknown version {version}")
        try:
            mode = OrderingMode(mode)
        except ValueError:
            raise UnknownOrderingMode(f"mode byte {mode}") from None
        return cls(depth=depth, mode=mode,
                   bundle_geometry=bool(flags & FLAG_BUNDLED_GEOMETRY),
                   q=q, n_voxels=n, payload_lengths=(l0, l1, l2))


@dataclass(frozen=True)
class CodecStream:
    header: StreamHeader
    geometry: np.ndarray | None  # bundled Morton codes, or None
    payloads: tuple              # (Y, U, V) bytes

    def to_bytes(self) -> bytes:
        parts = [self.header.pack()]
        if self.header.bundle_geometry:
            parts.append(self.geometry.astype("<u8").tobytes())
        parts.extend(self.payloads)
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CodecStream":
        header = StreamHeader.unpack(data)
        pos = HEADER_LEN
        geometry = None
        if header.bundle_geometry:
            geo_len = 8 * header.n_voxels
            if len(data) < pos + geo_len:
                raise TruncatedStream("bundled geometry truncated")
            geometry = np.frombuffer(data, dtype="<u8", count=header.n_voxels,
                                     offset=pos).astype(np.uint64)
            pos += geo_len
        payloads = []
        for length in header.payload_lengths:
            if len(data) < pos + length:
                raise TruncatedStream("payload truncated")
            payloads.append(data[pos:pos + length])
            pos += length
        return cls(header=header, geometry=geometry, payloads=tuple(payloads))

    @property
    def coded_bytes(self) -> int:
        """Bytes counted toward the rate: header + payloads, no geometry."""
        return HEADER_LEN + sum(self.header.payload_lengths)

    @property
    def bits_per_voxel(self) -> float:
        return 8.0 * self.coded_bytes / self.header.n_voxels


def encoded_symbols(cloud: VoxelCloud, q: float, mode: OrderingMode) -> np.ndarray:
    """Quantized coefficients in encode order, (N, 3) signed, one column
    per channel.  This is the symbol stream RLGR sees, before zigzag."""
    schedule = build_schedule(cloud)
    coeffs = forward(cloud, schedule)
    perm = make_permutation(mode, schedule.coef_weight, schedule.coef_depth)
    return quantize(coeffs.values, q)[perm.forward]


def encode(cloud: VoxelCloud, q: float, mode: OrderingMode,
           bundle_geometry: bool = False) -> CodecStream:
    if q <= 0:
        raise ValueError("quantizer step must be positive")
    mode = OrderingMode(mode)
    schedule = build_schedule(cloud)
    coeffs = forward(cloud, schedule)
    perm = make_permutation(mode, schedule.coef_weight, schedule.coef_depth)
    levels = quantize(coeffs.values, q)
    payloads = tuple(
        rlgr_encode(zigzag(levels[perm.forward, ch])) for ch in range(3)
    )
    header = StreamHeader(depth=cloud.depth, mode=mode,
                          bundle_geometry=bundle_geometry, q=q,
                          n_voxels=len(cloud),
                          payload_lengths=tuple(len(p) for p in payloads))
    geometry = cloud.morton.copy() if bundle_geometry else None
    return CodecStream(header=header, geometry=geometry, payloads=payloads)


def decode(stream: CodecStream, geometry=None) -> VoxelCloud:
    """Rebuild the voxel cloud from a stream plus its geometry.

    `geometry` may be a VoxelCloud, a Morton code array, or None when the
    stream bundles its own geometry.
    """
    header = stream.header
    if geometry is None:
        if stream.geometry is None:
            raise GeometryMismatch("stream has no bundled geometry and none was given")
        morton = stream.geometry
    elif isinstance(geometry, VoxelCloud):
        if geometry.depth != header.depth:
            raise GeometryMismatch(
                f"geometry depth {geometry.depth} != stream depth {header.depth}")
        morton = geometry.morton
    else:
        morton = np.asarray(geometry, dtype=np.uint64)
    if len(morton) != header.n_voxels:
        raise GeometryMismatch(
            f"expected {header.n_voxels} voxels, geometry has {len(morton)}")

    schedule = schedule_from_morton(morton, header.depth)
    perm = make_permutation(header.mode, schedule.coef_weight, schedule.coef_depth)
    levels = np.empty((header.n_voxels, 3), dtype=np.int64)
    for ch in range(3):
        syms = rlgr_decode(stream.payloads[ch], header.n_voxels)
        levels[perm.forward, ch] = unzigzag(syms)
    coeffs = CoefficientSet(values=dequantize(levels, header.q),
                            weight=schedule.coef_weight,
                            depth=schedule.coef_depth)
    yuv = inverse(coeffs, schedule)
    return VoxelCloud(depth=header.depth, morton=morton.copy(), yuv=yuv)
