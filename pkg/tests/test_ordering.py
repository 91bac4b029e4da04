import numpy as np
import pytest

import rahtcodec as rc
from rahtcodec.errors import DuplicateTraversalIndex, LengthMismatch
from rahtcodec.ordering import apply

from conftest import random_cloud


def test_mode_names_and_codes():
    assert rc.OrderingMode.from_name("traversal") == 0
    assert rc.OrderingMode.from_name("depth") == 1
    assert rc.OrderingMode.from_name("weight") == 2


def test_singleton_identity():
    for mode in rc.OrderingMode:
        perm = rc.make_permutation(mode, [1], [0])
        assert list(perm.forward) == [0]


def test_depth_sort_example():
    perm = rc.make_permutation(rc.OrderingMode.DEPTH,
                               weight=[4, 2, 2, 2], depth=[0, 3, 1, 2])
    assert list(perm.forward) == [0, 2, 3, 1]
    assert list(apply(perm, [9, 8, 7, 6])) == [9, 7, 6, 8]


def test_weight_sort_example():
    perm = rc.make_permutation(rc.OrderingMode.WEIGHT,
                               weight=[4, 2, 2, 4], depth=[0, 2, 3, 1])
    assert list(perm.forward) == [0, 3, 1, 2]


def test_dc_always_first():
    rng = np.random.default_rng(1)
    for _ in range(20):
        sched = rc.build_schedule(random_cloud(rng))
        for mode in rc.OrderingMode:
            perm = rc.make_permutation(mode, sched.coef_weight, sched.coef_depth)
            assert perm.forward[0] == 0


def test_keys_monotone_along_encode_order():
    rng = np.random.default_rng(2)
    for _ in range(20):
        sched = rc.build_schedule(random_cloud(rng))
        d = rc.make_permutation(rc.OrderingMode.DEPTH,
                                sched.coef_weight, sched.coef_depth)
        assert np.all(np.diff(sched.coef_depth[d.forward[1:]]) >= 0)
        w = rc.make_permutation(rc.OrderingMode.WEIGHT,
                                sched.coef_weight, sched.coef_depth)
        assert np.all(np.diff(sched.coef_weight[w.forward[1:]]) <= 0)


def test_inverse_undoes_forward():
    rng = np.random.default_rng(3)
    sched = rc.build_schedule(random_cloud(rng, max_voxels=300))
    values = rng.normal(size=sched.n_voxels)
    for mode in rc.OrderingMode:
        perm = rc.make_permutation(mode, sched.coef_weight, sched.coef_depth)
        assert np.array_equal(apply(perm.inverse, apply(perm.forward, values)), values)
        assert np.array_equal(perm.inverse[perm.forward], np.arange(len(perm)))


def test_identity_apply():
    perm = rc.make_permutation(rc.OrderingMode.TRAVERSAL, [3, 2, 2], [0, 1, 2])
    vals = [5, 6, 7]
    assert list(apply(perm, vals)) == vals


def test_duplicate_traversal_index():
    with pytest.raises(DuplicateTraversalIndex):
        rc.make_permutation(rc.OrderingMode.DEPTH, [2, 1, 1], [0, 1, 2],
                            tidx=[0, 1, 1])


def test_length_mismatch():
    perm = rc.make_permutation(rc.OrderingMode.DEPTH, [2, 1], [0, 1])
    with pytest.raises(LengthMismatch):
        apply(perm, [1, 2, 3])
