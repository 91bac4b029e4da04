"""MSB-first bit-level reader and writer.

The writer pads the final byte with zero bits; the reader raises
TruncatedStream instead of reading past the end of its buffer.
"""

from __future__ import annotations

from .errors import TruncatedStream


class BitWriter:
    def __init__(self):
        self._buf = bytearray()
        self._cur = 0
        self._nbits = 0  # bits pending in _cur, 0..7

    def write_bit(self, bit: int) -> None:
        self._cur = (self._cur << 1) | (bit & 1)
        self._nbits += 1
        if self._nbits == 8:
            self._buf.append(self._cur)
            self._cur = 0
            self._nbits = 0

    def write_bits(self, value: int, count: int) -> None:
        """Write `count` bits of `value`, most significant first."""
        for i in range(count - 1, -1, -1):
            self.write_bit((value >> i) & 1)

    @property
    def bit_length(self) -> int:
        return 8 * len(self._buf) + self._nbits

    def getvalue(self) -> bytes:
        """Zero-pad the final partial byte and return the buffer."""
        out = bytearray(self._buf)
        if self._nbits:
            out.append(self._cur << (8 - self._nbits))
        return bytes(out)


class BitReader:
    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0  # absolute bit position

    def read_bit(self) -> int:
        byte, off = divmod(self._pos, 8)
        if byte >= len(self._data):
            raise TruncatedStream("bit reader exhausted")
        self._pos += 1
        return (self._data[byte] >> (7 - off)) & 1

    def read_bits(self, count: int) -> int:
        v = 0
        for _ in range(count):
            v = (v << 1) | self.read_bit()
        return v

    @property
    def bits_read(self) -> int:
        return self._pos
