"""Layered restricted subset-sum DP.

Layer ``j`` holds the sums of exactly ``j`` distinct elements. All layers live
in one flat buffer; layer ``j`` covers ``[lo[j], hi[j]]`` where ``lo[j]`` and
``hi[j]`` are the sums of the ``j`` smallest and ``j`` largest elements, and
starts at ``starts[j]``. Elements are folded in one at a time, top layer
first, so each element is used at most once per sum.

Two dense kernels exist for each mode (presence / saturating multiplicity):
a loop form compiled with numba, and a slice-vectorised numpy form. Setting
``KSUMS_DISABLE_JIT=1`` selects the numpy form; it is also used when numba
is not importable. Layers too wide for a dense buffer go through a sparse
sorted-array path that needs no compilation.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import SumOverflowError

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
JIT_DISABLED = os.environ.get("KSUMS_DISABLE_JIT", "").strip().lower() not in ("", "0", "false", "no")
USE_JIT = HAVE_NUMBA and not JIT_DISABLED

# bytes; beyond this the sparse path is used
DENSE_BYTE_LIMIT = 1 << 27

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)
MAX_CAP = (1 << 62) - 1


def layer_bounds(sorted_vals, kmax):
    """Per-layer [lo, hi] as Python ints, overflow-checked."""
    lo = [0]
    hi = [0]
    n = len(sorted_vals)
    for j in range(1, kmax + 1):
        lo.append(lo[-1] + int(sorted_vals[j - 1]))
        hi.append(hi[-1] + int(sorted_vals[n - j]))
        if lo[-1] < INT64_MIN or hi[-1] > INT64_MAX:
            raise SumOverflowError(f"{j}-sums leave the signed 64-bit range")
    return lo, hi


def mult_dtype(cap):
    # saturating add needs 2*cap to fit
    if cap <= 127:
        return np.uint8
    if cap <= 32767:
        return np.uint16
    if cap <= (1 << 31) - 1:
        return np.uint32
    return np.int64


# ---------------------------------------------------------------- loop form

def _presence_loops(vals, lo, starts, kmax, buf, first, last):
    # first/last: occupied index range per layer, -1 when empty
    for idx in range(vals.shape[0]):
        a = vals[idx]
        top = min(idx + 1, kmax)
        for j in range(top, 0, -1):
            if last[j - 1] < 0:
                continue
            d0 = starts[j]
            dlen = starts[j + 1] - d0
            s0 = starts[j - 1]
            shift = lo[j] - lo[j - 1] - a
            i_lo = max(first[j - 1] - shift, 0)
            i_hi = min(last[j - 1] - shift, dlen - 1)
            if i_lo > i_hi:
                continue
            # local views let LLVM vectorise the loop
            dst = buf[d0 + i_lo:d0 + i_hi + 1]
            src = buf[s0 + i_lo + shift:s0 + i_hi + shift + 1]
            for i in range(dst.shape[0]):
                dst[i] |= src[i]
            if last[j] < 0:
                first[j] = i_lo
                last[j] = i_hi
            else:
                first[j] = min(first[j], i_lo)
                last[j] = max(last[j], i_hi)


def _multiplicity_loops(vals, lo, starts, kmax, buf, first, last, cap):
    for idx in range(vals.shape[0]):
        a = vals[idx]
        top = min(idx + 1, kmax)
        for j in range(top, 0, -1):
            if last[j - 1] < 0:
                continue
            d0 = starts[j]
            dlen = starts[j + 1] - d0
            s0 = starts[j - 1]
            shift = lo[j] - lo[j - 1] - a
            i_lo = max(first[j - 1] - shift, 0)
            i_hi = min(last[j - 1] - shift, dlen - 1)
            if i_lo > i_hi:
                continue
            dst = buf[d0 + i_lo:d0 + i_hi + 1]
            src = buf[s0 + i_lo + shift:s0 + i_hi + shift + 1]
            for i in range(dst.shape[0]):
                t = dst[i] + src[i]
                dst[i] = cap if t > cap else t
            if last[j] < 0:
                first[j] = i_lo
                last[j] = i_hi
            else:
                first[j] = min(first[j], i_lo)
                last[j] = max(last[j], i_hi)


if HAVE_NUMBA:
    presence_numba = numba.njit(cache=True, nogil=True)(_presence_loops)
    multiplicity_numba = numba.njit(cache=True, nogil=True)(_multiplicity_loops)
else:  # pragma: no cover
    presence_numba = multiplicity_numba = None


# --------------------------------------------------------------- numpy form

def presence_numpy(vals, lo, starts, kmax, buf, first, last):
    for idx in range(vals.shape[0]):
        a = int(vals[idx])
        for j in range(min(idx + 1, kmax), 0, -1):
            if last[j - 1] < 0:
                continue
            d0 = int(starts[j])
            dlen = int(starts[j + 1]) - d0
            s0 = int(starts[j - 1])
            shift = int(lo[j] - lo[j - 1]) - a
            i_lo = max(int(first[j - 1]) - shift, 0)
            i_hi = min(int(last[j - 1]) - shift, dlen - 1)
            if i_lo > i_hi:
                continue
            dst = buf[d0 + i_lo:d0 + i_hi + 1]
            np.bitwise_or(dst, buf[s0 + i_lo + shift:s0 + i_hi + shift + 1], out=dst)
            if last[j] < 0:
                first[j], last[j] = i_lo, i_hi
            else:
                first[j] = min(first[j], i_lo)
                last[j] = max(last[j], i_hi)


def multiplicity_numpy(vals, lo, starts, kmax, buf, first, last, cap):
    for idx in range(vals.shape[0]):
        a = int(vals[idx])
        for j in range(min(idx + 1, kmax), 0, -1):
            if last[j - 1] < 0:
                continue
            d0 = int(starts[j])
            dlen = int(starts[j + 1]) - d0
            s0 = int(starts[j - 1])
            shift = int(lo[j] - lo[j - 1]) - a
            i_lo = max(int(first[j - 1]) - shift, 0)
            i_hi = min(int(last[j - 1]) - shift, dlen - 1)
            if i_lo > i_hi:
                continue
            dst = buf[d0 + i_lo:d0 + i_hi + 1]
            np.add(dst, buf[s0 + i_lo + shift:s0 + i_hi + shift + 1], out=dst)
            np.minimum(dst, cap, out=dst)
            if last[j] < 0:
                first[j], last[j] = i_lo, i_hi
            else:
                first[j] = min(first[j], i_lo)
                last[j] = max(last[j], i_hi)


def _pick(use_jit):
    if use_jit is None:
        use_jit = USE_JIT
    if use_jit and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    if use_jit:
        return presence_numba, multiplicity_numba
    return presence_numpy, multiplicity_numpy


# ------------------------------------------------------------------ drivers

def dense_layers(vals, kmax, cap=None, use_jit=None):
    """Run the dense DP. Returns ``(lo, buf, starts)``; ``buf`` is the flat
    buffer (uint8 flags when ``cap`` is None, saturated counts otherwise)."""
    vals = np.ascontiguousarray(vals, dtype=np.int64)
    lo_py, hi_py = layer_bounds(vals, kmax)
    lens = [h - l + 1 for l, h in zip(lo_py, hi_py)]
    starts = np.zeros(kmax + 2, dtype=np.int64)
    starts[1:] = np.cumsum(lens)
    lo = np.array(lo_py, dtype=np.int64)
    dtype = np.uint8 if cap is None else mult_dtype(cap)
    buf = np.zeros(int(starts[-1]), dtype=dtype)
    buf[0] = 1
    first = np.full(kmax + 1, -1, dtype=np.int64)
    last = np.full(kmax + 1, -1, dtype=np.int64)
    first[0] = last[0] = 0
    presence, multiplicity = _pick(use_jit)
    if cap is None:
        presence(vals, lo, starts, kmax, buf, first, last)
    else:
        multiplicity(vals, lo, starts, kmax, buf, first, last, buf.dtype.type(cap))
    return lo, buf, starts


def dense_bytes(vals, kmax, cap=None):
    lo, hi = layer_bounds(vals, kmax)
    cells = sum(h - l + 1 for l, h in zip(lo, hi))
    width = 1 if cap is None else np.dtype(mult_dtype(cap)).itemsize
    return cells * width


def sparse_layers(vals, kmax, cap=None):
    """Sorted-array DP for wide value spreads. Returns per-layer
    ``(values, counts)``; counts is None in presence mode."""
    vals = np.asarray(vals, dtype=np.int64)
    layer_bounds(vals, kmax)
    values = [np.zeros(1, dtype=np.int64)] + [np.zeros(0, dtype=np.int64)] * kmax
    counts = [np.ones(1, dtype=np.int64)] + [np.zeros(0, dtype=np.int64)] * kmax
    for idx in range(vals.shape[0]):
        a = vals[idx]
        for j in range(min(idx + 1, kmax), 0, -1):
            src = values[j - 1]
            if src.size == 0:
                continue
            if cap is None:
                values[j] = np.union1d(values[j], src + a)
                continue
            allv = np.concatenate((values[j], src + a))
            allc = np.concatenate((counts[j], counts[j - 1]))
            order = np.argsort(allv, kind="stable")
            allv = allv[order]
            allc = allc[order]
            heads = np.flatnonzero(np.r_[True, allv[1:] != allv[:-1]])
            values[j] = allv[heads]
            counts[j] = np.minimum(np.add.reduceat(allc, heads), cap)
    if cap is None:
        return [(v, None) for v in values]
    return list(zip(values, counts))


def compute_layers(vals, kmax, cap=None, use_jit=None, byte_limit=None):
    """Per-layer ``(values, counts)`` for layers ``0..kmax``, choosing the
    dense or sparse path by memory footprint."""
    limit = DENSE_BYTE_LIMIT if byte_limit is None else byte_limit
    if cap is not None and not 1 <= cap <= MAX_CAP:
        raise ValueError(f"cap must lie in [1, 2**62 - 1], got {cap}")
    if dense_bytes(vals, kmax, cap) > limit:
        return sparse_layers(vals, kmax, cap)
    lo, buf, starts = dense_layers(vals, kmax, cap, use_jit)
    out = []
    for j in range(kmax + 1):
        seg = buf[starts[j]:starts[j + 1]]
        idx = np.flatnonzero(seg)
        v = idx.astype(np.int64) + lo[j]
        out.append((v, None if cap is None else seg[idx].astype(np.int64)))
    return out


def layer_sizes(vals, kmax, use_jit=None, byte_limit=None):
    """``|j-sums|`` for j in ``0..kmax`` without materialising the values."""
    limit = DENSE_BYTE_LIMIT if byte_limit is None else byte_limit
    if dense_bytes(vals, kmax) > limit:
        return [int(v.size) for v, _ in sparse_layers(vals, kmax)]
    _, buf, starts = dense_layers(vals, kmax, None, use_jit)
    return [int(np.count_nonzero(buf[starts[j]:starts[j + 1]])) for j in range(kmax + 1)]
