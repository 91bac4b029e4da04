"""Voxelized point cloud color codec.

Pipeline: PLY -> voxelize -> hierarchical transform -> quantize ->
reorder (traversal / depth / weight) -> zigzag -> adaptive run-length
Golomb-Rice coding, plus the rate/distortion/zero-run metrics used to
compare the orderings.
"""

from . import errors
from .cloud_io import (
    RawPointCloud,
    VoxelCloud,
    parse_ply,
    rgb_to_yuv,
    voxelize,
    write_ply,
    yuv_to_rgb,
)
from .container import CodecStream, StreamHeader, decode, encode, encoded_symbols
from .metrics import RdPoint, avg_zero_run, psnr_y, rd_sweep, write_csv
from .morton import morton_decode, morton_encode
from .octree import MergeSchedule, MergeStep, build_schedule, schedule_from_morton
from .ordering import OrderingMode, Permutation, make_permutation
from .quant import dequantize, quantize, unzigzag, zigzag
from .raht import CoefficientSet, butterfly_forward, butterfly_inverse, forward, inverse
from .rlgr import rlgr_decode, rlgr_encode
from .synth import generate_cloud

__version__ = "0.1.0"

__all__ = [
    "CodecStream", "CoefficientSet", "MergeSchedule", "MergeStep",
    "OrderingMode", "Permutation", "RawPointCloud", "RdPoint",
    "StreamHeader", "VoxelCloud", "avg_zero_run", "build_schedule",
    "butterfly_forward", "butterfly_inverse", "decode", "dequantize",
    "encode", "encoded_symbols", "errors", "forward", "generate_cloud",
    "inverse", "make_permutation", "morton_decode", "morton_encode",
    "parse_ply", "psnr_y", "quantize", "rd_sweep", "rgb_to_yuv",
    "rlgr_decode", "rlgr_encode", "schedule_from_morton", "voxelize",
    "write_csv", "write_ply", "yuv_to_rgb",
]
