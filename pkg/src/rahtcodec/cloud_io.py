"""Point cloud input/output: PLY parsing and writing, voxelization and
RGB <-> YUV conversion (ITU-R BT.601, full range).

A RawPointCloud holds real-valued coordinates and 8-bit RGB colors as
parsed from a PLY file.  Voxelization snaps the points onto the 2^L
integer grid, averages colors of points that land in the same cell,
converts to YUV and sorts by Morton code, producing the VoxelCloud the
transform operates on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DepthOutOfRange,
    MalformedHeader,
    TruncatedBody,
    UnsupportedFormat,
)
from .morton import MAX_DEPTH, morton_decode, morton_encode

# BT.601 full-range conversion
_RGB_TO_YUV = np.array([
    [0.299, 0.587, 0.114],
    [-0.168736, -0.331264, 0.5],
    [0.5, -0.418688, -0.081312],
])
_YUV_OFFSET = np.array([0.0, 128.0, 128.0])
_YUV_TO_RGB = np.linalg.inv(_RGB_TO_YUV)


@dataclass(frozen=True)
class RawPointCloud:
    """Points straight from a PLY file: (N,3) float coordinates, (N,3) colors."""

    xyz: np.ndarray
    rgb: np.ndarray

    def __post_init__(self):
        if self.xyz.shape != self.rgb.shape or self.xyz.ndim != 2 or self.xyz.shape[1] != 3:
            raise ValueError("xyz and rgb must both be (N, 3)")
        if np.any(self.rgb < 0) or np.any(self.rgb > 255):
            raise ValueError("color channels must lie in [0, 255]")

    def __len__(self):
        return self.xyz.shape[0]


@dataclass(frozen=True)
class VoxelCloud:
    """Occupied voxels of a 2^L grid, Morton-sorted, with YUV colors.

    `degenerate_axes` flags axes whose input extent was zero; those axes
    were mapped to coordinate 0 during voxelization.
    """

    depth: int
    morton: np.ndarray  # (N,) uint64, strictly increasing
    yuv: np.ndarray     # (N, 3) float64
    degenerate_axes: tuple = field(default=(False, False, False), compare=False)

    def __post_init__(self):
        if not 1 <= self.depth <= MAX_DEPTH:
            raise DepthOutOfRange(f"depth {self.depth} outside [1, {MAX_DEPTH}]")
        if self.morton.ndim != 1 or len(self.morton) == 0:
            raise ValueError("voxel cloud must hold at least one voxel")
        if self.yuv.shape != (len(self.morton), 3):
            raise ValueError("yuv must be (N, 3)")
        if np.any(self.morton[1:] <= self.morton[:-1]):
            raise ValueError("morton codes must be strictly increasing")
        if int(self.morton[-1]) >> (3 * self.depth):
            raise ValueError(f"morton code >= 2^{3 * self.depth}")

    def __len__(self):
        return len(self.morton)


def rgb_to_yuv(r, g, b):
    """BT.601 full-range RGB -> YUV; inputs clamped to [0, 255] first."""
    rgb = np.clip(np.stack(np.broadcast_arrays(r, g, b), axis=-1).astype(np.float64), 0.0, 255.0)
    yuv = rgb @ _RGB_TO_YUV.T + _YUV_OFFSET
    return yuv[..., 0], yuv[..., 1], yuv[..., 2]


def yuv_to_rgb(y, u, v):
    """Algebraic inverse of rgb_to_yuv, clamped to [0, 255]."""
    yuv = np.stack(np.broadcast_arrays(y, u, v), axis=-1).astype(np.float64) - _YUV_OFFSET
    rgb = np.clip(yuv @ _YUV_TO_RGB.T, 0.0, 255.0)
    return rgb[..., 0], rgb[..., 1], rgb[..., 2]


def _yuv_matrix(rgb: np.ndarray) -> np.ndarray:
    return rgb @ _RGB_TO_YUV.T + _YUV_OFFSET


def _rgb_matrix(yuv: np.ndarray) -> np.ndarray:
    return np.clip((yuv - _YUV_OFFSET) @ _YUV_TO_RGB.T, 0.0, 255.0)


def voxelize(cloud: RawPointCloud, depth: int) -> VoxelCloud:
    """Snap a raw cloud onto the 2^depth grid.

    Coordinates are min-max normalized per axis and floored; an already
    integer-gridded cloud that fits the grid is only translated, so
    voxelization is idempotent.  Points landing in the same cell have
    their RGB averaged before the YUV conversion.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise DepthOutOfRange(f"depth {depth} outside [1, {MAX_DEPTH}]")
    if len(cloud) == 0:
        raise ValueError("cannot voxelize an empty cloud")

    xyz = cloud.xyz.astype(np.float64)
    lo = xyz.min(axis=0)
    hi = xyz.max(axis=0)
    span = hi - lo
    degenerate = span == 0.0
    n_cells = float(1 << depth)

    shifted = xyz - lo
    integral = np.allclose(shifted, np.round(shifted), atol=1e-9)
    if integral and np.all(span <= n_cells - 1):
        # already on a compatible integer grid: translate only
        grid = np.round(shifted).astype(np.uint64)
    else:
        safe_span = np.where(degenerate, 1.0, span)
        grid = np.floor(shifted / safe_span * n_cells)
        grid = np.minimum(grid, n_cells - 1).astype(np.uint64)
    grid[:, degenerate] = 0

    codes = morton_encode(grid[:, 0], grid[:, 1], grid[:, 2], depth)
    codes = np.atleast_1d(np.asarray(codes, dtype=np.uint64))
    uniq, inverse = np.unique(codes, return_inverse=True)

    sums = np.zeros((len(uniq), 3))
    np.add.at(sums, inverse, cloud.rgb.astype(np.float64))
    counts = np.bincount(inverse, minlength=len(uniq)).astype(np.float64)
    mean_rgb = sums / counts[:, None]

    return VoxelCloud(
        depth=depth,
        morton=uniq,
        yuv=_yuv_matrix(mean_rgb),
        degenerate_axes=tuple(bool(d) for d in degenerate),
    )


# --- PLY ---

_FLOAT_TYPES = {"float": "<f4", "float32": "<f4", "double": "<f8", "float64": "<f8"}
_ALL_TYPES = {
    **_FLOAT_TYPES,
    "uchar": "u1", "uint8": "u1", "char": "i1", "int8": "i1",
    "short": "<i2", "int16": "<i2", "ushort": "<u2", "uint16": "<u2",
    "int": "<i4", "int32": "<i4", "uint": "<u4", "uint32": "<u4",
}


def parse_ply(data: bytes) -> RawPointCloud:
    """Parse an ascii or binary_little_endian PLY vertex cloud.

    Requires x,y,z float properties and red,green,blue uint8 properties;
    property order is free and extra scalar vertex properties are skipped.
    """
    end = data.find(b"end_header")
    if end < 0:
        raise MalformedHeader("no end_header line")
    end = data.index(b"\n", end) + 1
    header_lines = data[:end].decode("ascii", errors="replace").splitlines()
    if not header_lines or header_lines[0].strip() != "ply":
        raise MalformedHeader("missing 'ply' magic")

    fmt = None
    n_vertices = None
    props: list[tuple[str, str]] = []  # (ply type, name) of the vertex element
    in_vertex = False
    seen_element = False
    for line in header_lines[1:]:
        tok = line.split()
        if not tok or tok[0] in ("comment", "obj_info"):
            continue
        if tok[0] == "format":
            if len(tok) < 2 or tok[1] not in ("ascii", "binary_little_endian"):
                raise UnsupportedFormat(f"unsupported format {line!r}")
            fmt = tok[1]
        elif tok[0] == "element":
            if tok[1] == "vertex":
                if seen_element:
                    raise UnsupportedFormat("vertex element must come first")
                n_vertices = int(tok[2])
                in_vertex = True
            else:
                in_vertex = False
            seen_element = True
        elif tok[0] == "property" and in_vertex:
            if tok[1] == "list":
                raise UnsupportedFormat("list property on vertex element")
            props.append((tok[1], tok[2]))
    if fmt is None or n_vertices is None:
        raise MalformedHeader("missing format or vertex element")

    names = [name for _, name in props]
    for axis in ("x", "y", "z"):
        if axis not in names:
            raise MalformedHeader(f"missing vertex property {axis!r}")
        if props[names.index(axis)][0] not in _FLOAT_TYPES:
            raise UnsupportedFormat(f"property {axis!r} must be float")
    for chan in ("red", "green", "blue"):
        if chan not in names:
            raise UnsupportedFormat(f"missing color property {chan!r}")
        if props[names.index(chan)][0] not in ("uchar", "uint8"):
            raise UnsupportedFormat(f"property {chan!r} must be uint8")

    if fmt == "ascii":
        rows = data[end:].decode("ascii", errors="replace").split("\n")
        rows = [r for r in rows if r.strip()]
        if len(rows) < n_vertices:
            raise TruncatedBody(f"expected {n_vertices} vertices, found {len(rows)}")
        table = np.empty((n_vertices, len(props)))
        for i in range(n_vertices):
            vals = rows[i].split()
            if len(vals) < len(props):
                raise TruncatedBody(f"vertex row {i} has {len(vals)} values")
            table[i] = [float(v) for v in vals[:len(props)]]
        cols = {name: table[:, j] for j, (_, name) in enumerate(props)}
    else:
        try:
            dtype = np.dtype([(name, _ALL_TYPES[t]) for t, name in props])
        except KeyError as e:
            raise UnsupportedFormat(f"unsupported property type {e}") from None
        body = data[end:]
        if len(body) < n_vertices * dtype.itemsize:
            raise TruncatedBody(
                f"expected {n_vertices * dtype.itemsize} body bytes, found {len(body)}"
            )
        rec = np.frombuffer(body, dtype=dtype, count=n_vertices)
        cols = {name: rec[name].astype(np.float64) for _, name in props}

    xyz = np.column_stack([cols["x"], cols["y"], cols["z"]])
    rgb = np.column_stack([cols["red"], cols["green"], cols["blue"]])
    return RawPointCloud(xyz=xyz, rgb=rgb)


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def write_ply(cloud: VoxelCloud, fmt: str = "binary") -> bytes:
    """Serialize voxel centers and colors; fmt is 'ascii' or 'binary'."""
    if fmt not in ("ascii", "binary"):
        raise ValueError("fmt must be 'ascii' or 'binary'")
    x, y, z = morton_decode(cloud.morton, cloud.depth)
    rgb = _round_half_away(_rgb_matrix(cloud.yuv)).astype(np.uint8)

    fmt_line = "ascii 1.0" if fmt == "ascii" else "binary_little_endian 1.0"
    header = "\n".join([
        "ply",
        f"format {fmt_line}",
        f"element vertex {len(cloud)}",
        "property float x",
        "property float y",
        "property float z",
        "property uchar red",
        "property uchar green",
        "property uchar blue",
        "end_header",
    ]) + "\n"

    if fmt == "ascii":
        body = "".join(
            f"{float(x[i]):g} {float(y[i]):g} {float(z[i]):g} "
            f"{rgb[i, 0]} {rgb[i, 1]} {rgb[i, 2]}\n"
            for i in range(len(cloud))
        )
        return header.encode("ascii") + body.encode("ascii")

    rec = np.empty(len(cloud), dtype=np.dtype(
        [("x", "<f4"), ("y", "<f4"), ("z", "<f4"),
         ("red", "u1"), ("green", "u1"), ("blue", "u1")]))
    rec["x"] = x.astype(np.float32)
    rec["y"] = y.astype(np.float32)
    rec["z"] = z.astype(np.float32)
    rec["red"], rec["green"], rec["blue"] = rgb[:, 0], rgb[:, 1], rgb[:, 2]
    return header.encode("ascii") + rec.tobytes()
