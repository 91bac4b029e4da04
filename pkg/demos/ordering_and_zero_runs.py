"""Why coefficient ordering matters for the entropy coder.

Quantized high-pass coefficients are mostly zero, and the run-length
Golomb-Rice coder pays less when those zeros clump together.  Sorting
coefficients by merge depth pushes the large coarse-scale values to the
front and leaves a long zero tail; sorting by weight is close behind;
plain traversal order interleaves scales and breaks the runs up.
"""

import numpy as np

import rahtcodec as rc
from rahtcodec.rlgr import rlgr_encode


def main():
    cloud = rc.generate_cloud("gradient", depth=6, fill=0.05, seed=0)
    q = 20.0
    print(f"synthetic cloud: {len(cloud)} voxels, Q = {q:g}\n")

    # U and V are near-constant here and quantize to a single full-length
    # run in every ordering, so the Y channel is where the orderings differ
    print(f"{'ordering':>10} {'Y zero runs':>12} {'avg run len':>12} "
          f"{'Y payload bytes':>16} {'bpv':>8}")
    for mode in rc.OrderingMode:
        y = rc.encoded_symbols(cloud, q, mode)[:, 0]
        boundaries = (y == 0) & (np.concatenate([[1], y[:-1]]) != 0)
        n_runs = int(boundaries.sum())
        y_bytes = len(rlgr_encode(rc.zigzag(y).astype(np.int64)))
        bpv = rc.encode(cloud, q, mode).bits_per_voxel
        print(f"{mode.label:>10} {n_runs:12d} {rc.avg_zero_run(y):12.2f} "
              f"{y_bytes:16d} {bpv:8.4f}")

    print()
    syms = rc.encoded_symbols(cloud, q, rc.OrderingMode.DEPTH)[:, 0]
    nz = np.flatnonzero(syms)
    print(f"depth ordering, Y channel: last nonzero at position {nz[-1]}"
          f" of {len(syms)}; the rest is one zero run")


if __name__ == "__main__":
    main()
