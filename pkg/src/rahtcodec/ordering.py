"""Coefficient orderings: the tree traversal baseline, depth-ascending
and weight-descending permutations.

All three permutations are functions of the geometry-derived metadata
(weight, depth, traversal index) only, so the decoder rebuilds them from
the shared merge schedule without side information.  The DC is pinned to
encode position 0 in every mode and ties are broken by traversal index,
keeping the permutation deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateTraversalIndex, LengthMismatch


class OrderingMode(enum.IntEnum):
    TRAVERSAL = 0
    DEPTH = 1
    WEIGHT = 2

    @classmethod
    def from_name(cls, name: str) -> "OrderingMode":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown ordering mode {name!r}") from None

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class Permutation:
    """forward[encode_position] = traversal index; inverse undoes it."""

    forward: np.ndarray
    inverse: np.ndarray

    def __len__(self):
        return len(self.forward)


def make_permutation(mode: OrderingMode, weight, depth, tidx=None) -> Permutation:
    """Build the encode-order permutation for `mode`.

    `weight` and `depth` are indexed by traversal index when `tidx` is
    omitted; pass `tidx` explicitly for metadata in arbitrary order.
    """
    weight = np.asarray(weight, dtype=np.int64)
    depth = np.asarray(depth, dtype=np.int64)
    n = len(weight)
    if tidx is None:
        tidx = np.arange(n, dtype=np.int64)
    else:
        tidx = np.asarray(tidx, dtype=np.int64)
    if len(np.unique(tidx)) != n:
        raise DuplicateTraversalIndex("traversal indices must be unique")
    if np.count_nonzero(depth == 0) != 1:
        raise ValueError("exactly one DC (depth 0) entry expected")

    mode = OrderingMode(mode)
    if mode is OrderingMode.TRAVERSAL:
        order = np.argsort(tidx, kind="stable")
    elif mode is OrderingMode.DEPTH:
        order = np.lexsort((tidx, depth))
    else:
        order = np.lexsort((tidx, -weight))
    fwd = tidx[order]
    # pin the DC to position 0 regardless of its sort key
    dc = np.flatnonzero(fwd == tidx[depth == 0][0])[0]
    fwd = np.concatenate(([fwd[dc]], np.delete(fwd, dc)))

    inv = np.empty(n, dtype=np.int64)
    inv[fwd] = np.arange(n, dtype=np.int64)
    return Permutation(forward=fwd, inverse=inv)


def apply(perm_vector, values) -> np.ndarray:
    """out[i] = values[perm_vector[i]]; accepts a Permutation (its forward map)."""
    if isinstance(perm_vector, Permutation):
        perm_vector = perm_vector.forward
    values = np.asarray(values)
    if len(values) != len(perm_vector):
        raise LengthMismatch(f"{len(values)} values for a {len(perm_vector)}-entry permutation")
    return values[np.asarray(perm_vector, dtype=np.int64)]
