"""Command-line interface: encode, decode, eval, sweep, stats, generate.

Exit codes: 0 success, 2 user/input error, 3 internal error.  All
diagnostics go to stderr prefixed with the failing subcommand.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import container, metrics
from .cloud_io import parse_ply, voxelize, write_ply
from .errors import CodecError
from .octree import build_schedule
from .ordering import OrderingMode
from .synth import KINDS, generate_cloud


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("Q must be positive")
    return value


def _depth(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 21:
        raise argparse.ArgumentTypeError("depth must be in [1, 21]")
    return value


def _mode(text: str) -> OrderingMode:
    try:
        return OrderingMode.from_name(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _mode_list(text: str):
    return [_mode(t) for t in text.split(",")]


def _q_list(text: str):
    return [_positive_float(t) for t in text.split(",")]


def _load_voxelized(path: str, depth: int):
    with open(path, "rb") as f:
        return voxelize(parse_ply(f.read()), depth)


def _cmd_encode(args) -> int:
    cloud = _load_voxelized(args.input, args.depth)
    stream = container.encode(cloud, args.q, args.order,
                              bundle_geometry=args.bundle_geometry)
    with open(args.output, "wb") as f:
        f.write(stream.to_bytes())
    print(f"encode: {len(cloud)} voxels, 3x{len(cloud)} symbols, "
          f"{stream.bits_per_voxel:.6g} bpv", file=sys.stderr)
    return 0


def _cmd_decode(args) -> int:
    with open(args.input, "rb") as f:
        stream = container.CodecStream.from_bytes(f.read())
    geometry = None
    if args.geometry is not None:
        geometry = _load_voxelized(args.geometry, stream.header.depth)
    cloud = container.decode(stream, geometry)
    with open(args.output, "wb") as f:
        f.write(write_ply(cloud, "ascii" if args.ascii else "binary"))
    return 0


def _cmd_eval(args) -> int:
    a = _load_voxelized(args.cloud_a, args.depth)
    b = _load_voxelized(args.cloud_b, args.depth)
    value = metrics.psnr_y(a, b)
    print("inf" if value == metrics.LOSSLESS else f"{value:.4f}")
    return 0


def _cmd_sweep(args) -> int:
    cloud = _load_voxelized(args.input, args.depth)
    points = metrics.rd_sweep(cloud, args.q_list, args.orders, name=args.name)
    if args.csv:
        metrics.write_csv(points, args.csv)
    else:
        metrics.write_csv(points, sys.stdout)
    return 0


def _cmd_stats(args) -> int:
    cloud = _load_voxelized(args.input, args.depth)
    syms = container.encoded_symbols(cloud, args.q, args.order)
    for ch, name in enumerate("YUV"):
        print(f"avg_zero_run[{name}] = {metrics.avg_zero_run(syms[:, ch]):.6g}")
    schedule = build_schedule(cloud)
    depths, counts = np.unique(schedule.coef_depth[1:], return_counts=True)
    print("high-pass coefficients per depth:")
    for d, c in zip(depths, counts):
        print(f"  depth {d}: {c}")
    if args.amplitude_csv:
        with open(args.amplitude_csv, "w", encoding="utf-8") as f:
            f.write("position,abs_y,abs_u,abs_v\n")
            for i, (y, u, v) in enumerate(np.abs(syms)):
                f.write(f"{i},{y},{u},{v}\n")
    return 0


def _cmd_generate(args) -> int:
    cloud = generate_cloud(args.kind, args.depth, args.fill, args.seed)
    with open(args.output, "wb") as f:
        f.write(write_ply(cloud, "ascii" if args.ascii else "binary"))
    print(f"generate: {len(cloud)} voxels at depth {args.depth}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rahtcodec",
        description="Voxelized point cloud color codec (hierarchical "
                    "transform + run-length Golomb-Rice coding)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="compress a PLY cloud")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--depth", type=_depth, required=True)
    p.add_argument("--q", type=_positive_float, required=True)
    p.add_argument("--order", type=_mode, default=OrderingMode.DEPTH)
    p.add_argument("--bundle-geometry", action="store_true")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="reconstruct a PLY cloud")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--geometry", help="PLY with the encoder's geometry "
                                      "(required unless bundled)")
    p.add_argument("--ascii", action="store_true")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("eval", help="luminance PSNR between two clouds")
    p.add_argument("cloud_a")
    p.add_argument("cloud_b")
    p.add_argument("--depth", type=_depth, required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep", help="rate-distortion sweep to CSV")
    p.add_argument("input")
    p.add_argument("--depth", type=_depth, required=True)
    p.add_argument("--q-list", type=_q_list, required=True)
    p.add_argument("--orders", type=_mode_list,
                   default=[OrderingMode.TRAVERSAL, OrderingMode.DEPTH,
                            OrderingMode.WEIGHT])
    p.add_argument("--csv", help="output path (default: stdout)")
    p.add_argument("--name", default="cloud")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("stats", help="zero-run and coefficient statistics")
    p.add_argument("input")
    p.add_argument("--depth", type=_depth, required=True)
    p.add_argument("--q", type=_positive_float, required=True)
    p.add_argument("--order", type=_mode, default=OrderingMode.DEPTH)
    p.add_argument("--amplitude-csv", help="dump |quantized level| vs "
                                           "encode position as CSV")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("generate", help="write a synthetic PLY cloud")
    p.add_argument("output")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--depth", type=_depth, required=True)
    p.add_argument("--fill", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ascii", action="store_true")
    p.set_defaults(func=_cmd_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    stage = args.command
    try:
        return args.func(args)
    except (CodecError, OSError, ValueError) as e:
        print(f"{stage}: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # invariant violations and the like
        print(f"{stage}: internal error: {e!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
