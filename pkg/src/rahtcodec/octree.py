"""Geometry-only merge schedule over the binary Morton hierarchy.

The octree recursion is realized as 3L binary levels, one Morton bit per
level, finest level 3L first.  At each level the Morton-sorted working
list is scanned left to right: two adjacent nodes merge when they are
siblings (their codes agree above the level's bit), everything else is
promoted unchanged.  The schedule depends only on the Morton set, so
encoder and decoder derive it identically from shared geometry.

Each pair step will later emit one high-pass coefficient; the schedule
therefore also fixes every coefficient's depth (the level of its pair
step), weight (voxels merged into the pair) and traversal index (its
position in the root-first, left-to-right tree walk, DC at 0).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .cloud_io import VoxelCloud
from .errors import DepthOutOfRange
from .morton import MAX_DEPTH


@dataclass(frozen=True)
class MergeStep:
    level: int
    kind: str           # "pair" or "promote"
    src_a: int
    src_b: int | None   # None for promote
    dst: int
    w_a: int
    w_b: int | None


@dataclass(frozen=True)
class LevelPlan:
    """Vectorized description of one binary level's merges.

    `pair_pos[i]` is the position of a pair's left member in the working
    array entering this level; its right member sits at `pair_pos[i]+1`.
    `keep` lists the positions surviving into the next working array
    (left members carry the merged node).
    """

    level: int
    size: int
    pair_pos: np.ndarray
    keep: np.ndarray
    w_left: np.ndarray
    w_right: np.ndarray
    pair_tidx: np.ndarray  # traversal index of each pair's high-pass


@dataclass(frozen=True)
class MergeSchedule:
    depth: int
    n_voxels: int
    levels: tuple          # LevelPlan for levels 3L .. 1
    coef_weight: np.ndarray  # (N,) by traversal index; [0] is the DC
    coef_depth: np.ndarray   # (N,) by traversal index; [0] is 0

    @property
    def n_highpass(self) -> int:
        return self.n_voxels - 1

    def iter_steps(self):
        """Yield per-node MergeStep records, levels 3L down to 1."""
        for plan in self.levels:
            is_right = np.zeros(plan.size, dtype=bool)
            is_right[plan.pair_pos + 1] = True
            dst_of = np.cumsum(~is_right) - 1
            pair_left = set(plan.pair_pos.tolist())
            weights = self._weights_entering(plan.level)
            i = 0
            while i < plan.size:
                if i in pair_left:
                    yield MergeStep(plan.level, "pair", i, i + 1, int(dst_of[i]),
                                    int(weights[i]), int(weights[i + 1]))
                    i += 2
                else:
                    yield MergeStep(plan.level, "promote", i, None, int(dst_of[i]),
                                    int(weights[i]), None)
                    i += 1

    def _weights_entering(self, level: int) -> np.ndarray:
        w = np.ones(self.n_voxels, dtype=np.int64)
        for plan in self.levels:
            if plan.level == level:
                return w
            merged = w.copy()
            merged[plan.pair_pos] = plan.w_left + plan.w_right
            w = merged[plan.keep]
        raise ValueError(f"no such level {level}")

    def signature(self) -> bytes:
        """Digest of the full schedule; equal geometry gives equal bytes."""
        h = hashlib.sha256()
        h.update(np.int64([self.depth, self.n_voxels]).tobytes())
        for plan in self.levels:
            h.update(np.int64([plan.level, plan.size]).tobytes())
            h.update(plan.pair_pos.tobytes())
            h.update(plan.pair_tidx.tobytes())
        return h.digest()


def schedule_from_morton(morton: np.ndarray, depth: int) -> MergeSchedule:
    """Build the merge schedule for a strictly sorted Morton code list."""
    if not 1 <= depth <= MAX_DEPTH:
        raise DepthOutOfRange(f"depth {depth} outside [1, {MAX_DEPTH}]")
    n = len(morton)
    ids = np.asarray(morton, dtype=np.uint64)
    weights = np.ones(n, dtype=np.int64)
    leftmost = np.arange(n, dtype=np.int64)  # leftmost leaf of each node

    raw_levels = []
    pair_levels = []     # level of every pair step, collection order
    pair_leftmost = []   # leftmost leaf of every pair step
    for level in range(3 * depth, 0, -1):
        parent = ids >> np.uint64(1)
        mask = parent[:-1] == parent[1:] if len(ids) > 1 else np.zeros(0, dtype=bool)
        pair_pos = np.flatnonzero(mask)
        keep_mask = np.ones(len(ids), dtype=bool)
        keep_mask[pair_pos + 1] = False
        keep = np.flatnonzero(keep_mask)

        w_left = weights[pair_pos].copy()
        w_right = weights[pair_pos + 1].copy()
        raw_levels.append((level, len(ids), pair_pos, keep, w_left, w_right))
        pair_levels.append(np.full(len(pair_pos), level, dtype=np.int64))
        pair_leftmost.append(leftmost[pair_pos].copy())

        merged_w = weights.copy()
        merged_w[pair_pos] = w_left + w_right
        weights = merged_w[keep]
        leftmost = leftmost[keep]
        ids = parent[keep]

    # Traversal order: preorder of the merge tree = sort pair steps by
    # (leftmost leaf, then level ascending, i.e. root-most first).
    levels_flat = np.concatenate(pair_levels) if pair_levels else np.zeros(0, dtype=np.int64)
    leftmost_flat = np.concatenate(pair_leftmost) if pair_leftmost else np.zeros(0, dtype=np.int64)
    order = np.lexsort((levels_flat, leftmost_flat))
    tidx_flat = np.empty(len(order), dtype=np.int64)
    tidx_flat[order] = np.arange(1, len(order) + 1)

    coef_weight = np.empty(n, dtype=np.int64)
    coef_depth = np.empty(n, dtype=np.int64)
    coef_weight[0] = n
    coef_depth[0] = 0

    plans = []
    offset = 0
    for level, size, pair_pos, keep, w_left, w_right in raw_levels:
        tidx = tidx_flat[offset:offset + len(pair_pos)]
        offset += len(pair_pos)
        coef_weight[tidx] = w_left + w_right
        coef_depth[tidx] = level
        plans.append(LevelPlan(level=level, size=size, pair_pos=pair_pos,
                               keep=keep, w_left=w_left, w_right=w_right,
                               pair_tidx=tidx))

    return MergeSchedule(depth=depth, n_voxels=n, levels=tuple(plans),
                         coef_weight=coef_weight, coef_depth=coef_depth)


def build_schedule(cloud: VoxelCloud) -> MergeSchedule:
    return schedule_from_morton(cloud.morton, cloud.depth)
