"""Adaptive run-length Golomb-Rice coding of nonnegative symbols.

The coder switches between two modes driven by a scaled parameter kP
(k = kP // 4):

* k == 0, no-run mode: each symbol u is Golomb-Rice coded with
  kR = kRP // 4.  kP grows on zeros and shrinks on nonzeros, so a zero
  burst pushes the coder into run mode.
* k >= 1, run mode: a complete run of 2^k zeros costs a single 0 bit.
  A nonzero u after m < 2^k zeros costs a 1 bit, m in k raw bits, then
  the GR code of u - 1.  A partial run at end of stream is flushed as a
  1 bit plus m alone; the decoder knows the symbol count and stops.

GR codes write the quotient p = v >> kR in unary (p ones, one zero)
followed by the kR low bits of v.  When p >= 12 an escape of twelve one
bits is written followed by v as a raw 32-bit big-endian field.

kRP adapts on the observed quotient (down 2 when p == 0, up p + 1 when
p > 1), mirrored exactly by the decoder, so both sides stay in lockstep.
Both parameters are clamped to [0, 128].

`rlgr_encode`/`rlgr_decode` run on a numba-compiled core;
`rlgr_encode_reference`/`rlgr_decode_reference` are the plain Python
versions kept as a differential oracle.
"""

from __future__ import annotations

import numpy as np

from .bits import BitReader, BitWriter
from .errors import MalformedEscape, TruncatedStream

L = 4           # adaptation granularity: k = kP // L
U0, D0 = 3, 1   # no-run mode kP up/down
U1, D1 = 2, 1   # run mode kP up/down
KP_MAX = 32 * L
KRP_MAX = 32 * L
KP_INIT = 2 * L
KRP_INIT = 2 * L
ESCAPE_QUOTIENT = 12
ESCAPE_BITS = 32

try:
    from . import _rlgr_numba
except ImportError:  # pragma: no cover - numba is a hard dependency
    _rlgr_numba = None


# --- Golomb-Rice primitive ---

def gr_encode(writer: BitWriter, v: int, kr: int) -> None:
    """Write one GR codeword (with the 12-ones escape) for v >= 0."""
    p = v >> kr
    if p >= ESCAPE_QUOTIENT:
        if v >> ESCAPE_BITS:
            raise ValueError(f"value {v} does not fit the 32-bit escape")
        writer.write_bits((1 << ESCAPE_QUOTIENT) - 1, ESCAPE_QUOTIENT)
        writer.write_bits(v, ESCAPE_BITS)
    else:
        writer.write_bits(((1 << p) - 1) << 1, p + 1)  # p ones, then a zero
        if kr:
            writer.write_bits(v & ((1 << kr) - 1), kr)


def gr_decode(reader: BitReader, kr: int) -> int:
    p = 0
    while p < ESCAPE_QUOTIENT and reader.read_bit():
        p += 1
    if p == ESCAPE_QUOTIENT:
        v = reader.read_bits(ESCAPE_BITS)
        if (v >> kr) < ESCAPE_QUOTIENT:
            raise MalformedEscape(f"escaped value {v} below escape threshold")
        return v
    return (p << kr) | (reader.read_bits(kr) if kr else 0)


def _adapt_krp(krp: int, p: int) -> int:
    if p == 0:
        return max(0, krp - 2)
    if p > 1:
        return min(KRP_MAX, krp + p + 1)
    return krp


# --- pure Python reference ---

def rlgr_encode_reference(symbols, trace: list | None = None) -> bytes:
    """Reference encoder; `trace` collects (kP, kRP) after each symbol."""
    symbols = [int(s) for s in symbols]
    if any(s < 0 for s in symbols):
        raise ValueError("symbols must be nonnegative")
    w = BitWriter()
    kp, krp = KP_INIT, KRP_INIT
    n = len(symbols)
    i = 0
    while i < n:
        k = kp // L
        kr = krp // L
        if k == 0:
            u = symbols[i]
            i += 1
            gr_encode(w, u, kr)
            krp = _adapt_krp(krp, u >> kr)
            kp = min(KP_MAX, kp + U0) if u == 0 else max(0, kp - D0)
            if trace is not None:
                trace.append((kp, krp))
        else:
            m = 0
            while i < n and symbols[i] == 0 and m < (1 << k):
                m += 1
                i += 1
            if m == (1 << k):
                w.write_bit(0)
                kp = min(KP_MAX, kp + U1)
                if trace is not None:
                    trace.extend([(kp, krp)] * m)
            elif i == n:
                # end of stream inside a partial run: flush the count only
                w.write_bit(1)
                w.write_bits(m, k)
                if trace is not None:
                    trace.extend([(kp, krp)] * m)
            else:
                u = symbols[i]
                i += 1
                if trace is not None:
                    trace.extend([(kp, krp)] * m)
                w.write_bit(1)
                w.write_bits(m, k)
                gr_encode(w, u - 1, kr)
                krp = _adapt_krp(krp, (u - 1) >> kr)
                kp = max(0, kp - D1)
                if trace is not None:
                    trace.append((kp, krp))
    return w.getvalue()


def rlgr_decode_reference(payload: bytes, count: int, trace: list | None = None) -> list:
    """Reference decoder, lockstep mirror of the encoder."""
    r = BitReader(payload)
    out: list[int] = []
    kp, krp = KP_INIT, KRP_INIT
    while len(out) < count:
        k = kp // L
        kr = krp // L
        if k == 0:
            v = gr_decode(r, kr)
            out.append(v)
            krp = _adapt_krp(krp, v >> kr)
            kp = min(KP_MAX, kp + U0) if v == 0 else max(0, kp - D0)
            if trace is not None:
                trace.append((kp, krp))
        else:
            if r.read_bit() == 0:
                m = min(1 << k, count - len(out))  # cap guards corrupt input
                out.extend([0] * m)
                kp = min(KP_MAX, kp + U1)
                if trace is not None:
                    trace.extend([(kp, krp)] * m)
            else:
                m = min(r.read_bits(k), count - len(out))
                out.extend([0] * m)
                if trace is not None:
                    trace.extend([(kp, krp)] * m)
                if len(out) >= count:
                    break  # encoder's end-of-stream flush
                v = gr_decode(r, kr)
                out.append(v + 1)
                krp = _adapt_krp(krp, v >> kr)
                kp = max(0, kp - D1)
                if trace is not None:
                    trace.append((kp, krp))
    return out


# --- fast path ---

def rlgr_encode(symbols, with_state_trace: bool = False):
    """Encode nonnegative symbols; returns bytes, or (bytes, trace) where
    trace is an (n, 2) array of (kP, kRP) after each symbol."""
    symbols = np.ascontiguousarray(symbols, dtype=np.int64)
    if symbols.ndim != 1:
        raise ValueError("symbols must be one-dimensional")
    if symbols.size and symbols.min() < 0:
        raise ValueError("symbols must be nonnegative")
    n = symbols.size
    buf = np.zeros(10 * n + 16, dtype=np.uint8)
    trace = np.empty((n, 2), dtype=np.int32)
    nbits = _rlgr_numba.encode_core(symbols, buf, trace)
    if nbits < 0:
        raise ValueError("symbol does not fit the 32-bit escape")
    payload = buf[: (nbits + 7) // 8].tobytes()
    return (payload, trace) if with_state_trace else payload


def rlgr_decode(payload: bytes, count: int, with_state_trace: bool = False):
    """Decode `count` symbols from an rlgr_encode payload."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    data = np.frombuffer(payload, dtype=np.uint8)
    out = np.empty(count, dtype=np.int64)
    trace = np.empty((count, 2), dtype=np.int32)
    status = _rlgr_numba.decode_core(data, count, out, trace)
    if status == 1:
        raise TruncatedStream(f"payload ended before {count} symbols")
    if status == 2:
        raise MalformedEscape("escaped value below escape threshold")
    return (out, trace) if with_state_trace else out
