"""Numba-compiled RLGR core.

Mirrors rlgr_encode_reference / rlgr_decode_reference exactly; the pure
Python versions stay the readable specification and differential oracle.
Buffers are preallocated by the caller: the encoder needs at most 10
bytes per symbol (run header 33 bits + escaped GR code 44 bits).
"""

import numba
import numpy as np

L = 4
U0, D0 = 3, 1
U1, D1 = 2, 1
KP_MAX = 128
KRP_MAX = 128
KP_INIT = 8
KRP_INIT = 8
ESCAPE_QUOTIENT = 12
ESCAPE_BITS = 32


@numba.njit(cache=True, inline="always")
def _put_bits(buf, pos, value, count):
    for i in range(count - 1, -1, -1):
        if (value >> i) & 1:
            buf[pos >> 3] |= np.uint8(1 << (7 - (pos & 7)))
        pos += 1
    return pos


@numba.njit(cache=True, inline="always")
def _adapt_krp(krp, p):
    if p == 0:
        return max(0, krp - 2)
    if p > 1:
        return min(KRP_MAX, krp + p + 1)
    return krp


@numba.njit(numba.int64(numba.int64[:], numba.uint8[:], numba.int32[:, :]), cache=True)
def encode_core(symbols, buf, trace):
    """Encode into buf, fill the per-symbol (kP, kRP) trace, return the
    bit length, or -1 if a value overflows the escape field."""
    n = symbols.shape[0]
    pos = 0
    kp = KP_INIT
    krp = KRP_INIT
    i = 0
    while i < n:
        k = kp // L
        kr = krp // L
        if k == 0:
            u = symbols[i]
            i += 1
            p = u >> kr
            if p >= ESCAPE_QUOTIENT:
                if u >> ESCAPE_BITS:
                    return -1
                pos = _put_bits(buf, pos, (1 << ESCAPE_QUOTIENT) - 1, ESCAPE_QUOTIENT)
                pos = _put_bits(buf, pos, u, ESCAPE_BITS)
            else:
                pos = _put_bits(buf, pos, ((1 << p) - 1) << 1, p + 1)
                if kr:
                    pos = _put_bits(buf, pos, u & ((1 << kr) - 1), kr)
            krp = _adapt_krp(krp, p)
            if u == 0:
                kp = min(KP_MAX, kp + U0)
            else:
                kp = max(0, kp - D0)
            trace[i - 1, 0] = kp
            trace[i - 1, 1] = krp
        else:
            run = 1 << k
            start = i
            m = 0
            while i < n and symbols[i] == 0 and m < run:
                m += 1
                i += 1
            if m == run:
                pos = _put_bits(buf, pos, 0, 1)
                kp = min(KP_MAX, kp + U1)
                for j in range(start, i):
                    trace[j, 0] = kp
                    trace[j, 1] = krp
            elif i == n:
                pos = _put_bits(buf, pos, 1, 1)
                pos = _put_bits(buf, pos, m, k)
                for j in range(start, i):
                    trace[j, 0] = kp
                    trace[j, 1] = krp
            else:
                u = symbols[i]
                i += 1
                for j in range(start, start + m):
                    trace[j, 0] = kp
                    trace[j, 1] = krp
                pos = _put_bits(buf, pos, 1, 1)
                pos = _put_bits(buf, pos, m, k)
                v = u - 1
                p = v >> kr
                if p >= ESCAPE_QUOTIENT:
                    if v >> ESCAPE_BITS:
                        return -1
                    pos = _put_bits(buf, pos, (1 << ESCAPE_QUOTIENT) - 1, ESCAPE_QUOTIENT)
                    pos = _put_bits(buf, pos, v, ESCAPE_BITS)
                else:
                    pos = _put_bits(buf, pos, ((1 << p) - 1) << 1, p + 1)
                    if kr:
                        pos = _put_bits(buf, pos, v & ((1 << kr) - 1), kr)
                krp = _adapt_krp(krp, p)
                kp = max(0, kp - D1)
                trace[i - 1, 0] = kp
                trace[i - 1, 1] = krp
    return pos


_readonly_u8 = numba.types.Array(numba.uint8, 1, "C", readonly=True)


@numba.njit([numba.int64(numba.uint8[:], numba.int64, numba.int64[:], numba.int32[:, :]),
             numba.int64(_readonly_u8, numba.int64, numba.int64[:], numba.int32[:, :])],
            cache=True)
def decode_core(payload, count, out, trace):
    """Decode `count` symbols into out; 0 ok, 1 truncated, 2 bad escape."""
    total_bits = payload.shape[0] * 8
    pos = 0
    kp = KP_INIT
    krp = KRP_INIT
    done = 0
    while done < count:
        k = kp // L
        kr = krp // L
        if k == 0:
            # GR decode
            p = 0
            while p < ESCAPE_QUOTIENT:
                if pos >= total_bits:
                    return 1
                bit = (payload[pos >> 3] >> (7 - (pos & 7))) & 1
                pos += 1
                if bit == 0:
                    break
                p += 1
            if p == ESCAPE_QUOTIENT:
                if pos + ESCAPE_BITS > total_bits:
                    return 1
                v = 0
                for _ in range(ESCAPE_BITS):
                    v = (v << 1) | ((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                    pos += 1
                if (v >> kr) < ESCAPE_QUOTIENT:
                    return 2
            else:
                if pos + kr > total_bits:
                    return 1
                rem = 0
                for _ in range(kr):
                    rem = (rem << 1) | ((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                    pos += 1
                v = (p << kr) | rem
            out[done] = v
            krp = _adapt_krp(krp, v >> kr)
            if v == 0:
                kp = min(KP_MAX, kp + U0)
            else:
                kp = max(0, kp - D0)
            trace[done, 0] = kp
            trace[done, 1] = krp
            done += 1
        else:
            if pos >= total_bits:
                return 1
            bit = (payload[pos >> 3] >> (7 - (pos & 7))) & 1
            pos += 1
            if bit == 0:
                m = min(np.int64(1) << k, count - done)
                kp = min(KP_MAX, kp + U1)
                for _ in range(m):
                    out[done] = 0
                    trace[done, 0] = kp
                    trace[done, 1] = krp
                    done += 1
            else:
                if pos + k > total_bits:
                    return 1
                m = 0
                for _ in range(k):
                    m = (m << 1) | ((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                    pos += 1
                if m > count - done:
                    m = count - done
                for _ in range(m):
                    out[done] = 0
                    trace[done, 0] = kp
                    trace[done, 1] = krp
                    done += 1
                if done >= count:
                    break  # encoder's end-of-stream flush carried no value
                # GR decode of u - 1
                p = 0
                while p < ESCAPE_QUOTIENT:
                    if pos >= total_bits:
                        return 1
                    b = (payload[pos >> 3] >> (7 - (pos & 7))) & 1
                    pos += 1
                    if b == 0:
                        break
                    p += 1
                if p == ESCAPE_QUOTIENT:
                    if pos + ESCAPE_BITS > total_bits:
                        return 1
                    v = 0
                    for _ in range(ESCAPE_BITS):
                        v = (v << 1) | ((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                        pos += 1
                    if (v >> kr) < ESCAPE_QUOTIENT:
                        return 2
                else:
                    if pos + kr > total_bits:
                        return 1
                    rem = 0
                    for _ in range(kr):
                        rem = (rem << 1) | ((payload[pos >> 3] >> (7 - (pos & 7))) & 1)
                        pos += 1
                    v = (p << kr) | rem
                out[done] = v + 1
                krp = _adapt_krp(krp, v >> kr)
                kp = max(0, kp - D1)
                trace[done, 0] = kp
                trace[done, 1] = krp
                done += 1
    return 0
