import numpy as np
import pytest

import rahtcodec as rc
from rahtcodec.container import HEADER_LEN, CodecStream, StreamHeader
from rahtcodec.errors import GeometryMismatch, MalformedHeader, UnknownOrderingMode

from conftest import random_cloud


class TestHeader:
    def test_pack_unpack(self):
        h = StreamHeader(depth=9, mode=rc.OrderingMode.WEIGHT, bundle_geometry=True,
                         q=12.5, n_voxels=100000, payload_lengths=(10, 20, 30))
        data = h.pack()
        assert len(data) == HEADER_LEN
        assert StreamHeader.unpack(data) == h

    def test_bad_magic(self):
        h = StreamHeader(depth=4, mode=rc.OrderingMode.DEPTH, bundle_geometry=False,
                         q=10.0, n_voxels=5, payload_lengths=(1, 1, 1))
        with pytest.raises(MalformedHeader):
            StreamHeader.unpack(b"XXXX" + h.pack()[4:])

    def test_unknown_version(self):
        h = StreamHeader(depth=4, mode=rc.OrderingMode.DEPTH, bundle_geometry=False,
                         q=10.0, n_voxels=5, payload_lengths=(1, 1, 1))
        data = bytearray(h.pack())
        data[4] = 99
        with pytest.raises(MalformedHeader):
            StreamHeader.unpack(bytes(data))

    def test_unknown_ordering_mode(self):
        h = StreamHeader(depth=4, mode=rc.OrderingMode.DEPTH, bundle_geometry=False,
                         q=10.0, n_voxels=5, payload_lengths=(1, 1, 1))
        data = bytearray(h.pack())
        data[6] = 3
        with pytest.raises(UnknownOrderingMode):
            StreamHeader.unpack(bytes(data))


class TestEncodeDecode:
    def test_single_voxel(self):
        cloud = rc.VoxelCloud(depth=2, morton=np.array([13], dtype=np.uint64),
                              yuv=np.array([[100.0, 90.0, 140.0]]))
        stream = rc.encode(cloud, 10.0, rc.OrderingMode.DEPTH)
        assert stream.header.n_voxels == 1
        recon = rc.decode(stream, cloud.morton)
        assert np.array_equal(recon.morton, cloud.morton)

    def test_constant_cloud_compresses_hard(self):
        rng = np.random.default_rng(0)
        base = random_cloud(rng, depth=5, max_voxels=1000)
        cloud = rc.VoxelCloud(depth=5, morton=base.morton,
                              yuv=np.full((len(base), 3), 77.0))
        stream = rc.encode(cloud, 40.0, rc.OrderingMode.DEPTH)
        payload_bits = 8 * sum(stream.header.payload_lengths)
        assert payload_bits < len(cloud)

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        cloud = random_cloud(rng, max_voxels=500)
        a = rc.encode(cloud, 10.0, rc.OrderingMode.WEIGHT, bundle_geometry=True)
        b = rc.encode(cloud, 10.0, rc.OrderingMode.WEIGHT, bundle_geometry=True)
        assert a.to_bytes() == b.to_bytes()

    def test_stream_bytes_roundtrip(self):
        rng = np.random.default_rng(2)
        cloud = random_cloud(rng, max_voxels=300)
        stream = rc.encode(cloud, 5.0, rc.OrderingMode.TRAVERSAL, bundle_geometry=True)
        data = stream.to_bytes()
        assert len(data) == HEADER_LEN + 8 * len(cloud) + sum(stream.header.payload_lengths)
        parsed = CodecStream.from_bytes(data)
        recon = rc.decode(parsed)  # geometry bundled
        assert np.array_equal(recon.morton, cloud.morton)

    @pytest.mark.parametrize("q", [1, 5, 10, 20, 40, 64])
    def test_rms_error_bound(self, q):
        rng = np.random.default_rng(q)
        for _ in range(5):
            cloud = random_cloud(rng, max_voxels=600)
            stream = rc.encode(cloud, q, rc.OrderingMode.DEPTH)
            recon = rc.decode(stream, cloud.morton)
            for ch in range(3):
                rms = np.sqrt(np.mean((recon.yuv[:, ch] - cloud.yuv[:, ch]) ** 2))
                assert rms <= q / 2 + 1e-9

    def test_decode_identical_across_modes(self):
        rng = np.random.default_rng(3)
        cloud = random_cloud(rng, max_voxels=800)
        outputs = []
        for mode in rc.OrderingMode:
            stream = rc.encode(cloud, 10.0, mode)
            outputs.append(rc.decode(stream, cloud.morton).yuv)
        assert np.array_equal(outputs[0], outputs[1])
        assert np.array_equal(outputs[0], outputs[2])

    def test_geometry_mismatch(self):
        rng = np.random.default_rng(4)
        cloud = random_cloud(rng, max_voxels=100)
        if len(cloud) < 2:
            pytest.skip("need at least two voxels")
        stream = rc.encode(cloud, 10.0, rc.OrderingMode.DEPTH)
        with pytest.raises(GeometryMismatch):
            rc.decode(stream, cloud.morton[:-1])

    def test_missing_geometry(self):
        rng = np.random.default_rng(5)
        cloud = random_cloud(rng, max_voxels=50)
        stream = rc.encode(cloud, 10.0, rc.OrderingMode.DEPTH)
        with pytest.raises(GeometryMismatch):
            rc.decode(stream)

    def test_rate_excludes_bundled_geometry(self):
        rng = np.random.default_rng(6)
        cloud = random_cloud(rng, max_voxels=200)
        plain = rc.encode(cloud, 10.0, rc.OrderingMode.DEPTH)
        bundled = rc.encode(cloud, 10.0, rc.OrderingMode.DEPTH, bundle_geometry=True)
        assert plain.bits_per_voxel == bundled.bits_per_voxel
