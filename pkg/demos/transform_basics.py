"""Walk through the hierarchical transform on a tiny hand-built cloud.

Shows the per-pair butterfly, the geometry-driven merge schedule, and the
two invariants the codec leans on: energy preservation and the DC value
being the scaled cloud mean.
"""

import math

import numpy as np

import rahtcodec as rc


def main():
    # four voxels in a 4x4x4 grid, one corner each
    morton = rc.morton_encode(
        np.array([0, 0, 3, 3]), np.array([0, 3, 0, 3]), np.array([0, 0, 0, 0]),
        depth=2)
    order = np.argsort(morton)
    yuv = np.array([[100.0, 128.0, 128.0],
                    [140.0, 120.0, 130.0],
                    [90.0, 135.0, 125.0],
                    [200.0, 110.0, 140.0]])[order]
    cloud = rc.VoxelCloud(depth=2, morton=morton[order], yuv=yuv)

    sched = rc.build_schedule(cloud)
    print(f"{len(cloud)} voxels at depth {cloud.depth} "
          f"-> {sched.n_highpass} high-pass coefficients + 1 DC\n")

    print("merge schedule (leaves to root):")
    for step in sched.iter_steps():
        if step.kind == "pair":
            print(f"  level {step.level:2d}: merge weights "
                  f"{step.w_a:.0f}+{step.w_b:.0f}")
    print()

    coef = rc.forward(cloud, sched)
    print("coefficients (Y channel), Morton-tree order:")
    for i, v in enumerate(coef.values[:, 0]):
        tag = "DC" if i == 0 else f"depth {sched.coef_depth[i]}"
        print(f"  [{i}] {v:9.4f}  weight {sched.coef_weight[i]:.0f}  ({tag})")
    print()

    energy_in = np.sum(cloud.yuv ** 2)
    energy_out = np.sum(coef.values ** 2)
    print(f"energy in  = {energy_in:.6f}")
    print(f"energy out = {energy_out:.6f}  (orthonormal: identical)")

    dc = cloud.yuv[:, 0].sum() / math.sqrt(len(cloud))
    print(f"DC check: sum(Y)/sqrt(N) = {dc:.4f} vs coefficient {coef.values[0, 0]:.4f}")

    back = rc.inverse(coef, sched)
    print(f"inverse max error = {np.abs(back - cloud.yuv).max():.2e}")


if __name__ == "__main__":
    main()
