"""Difference and shift-match sets, switching between pairwise kernels and FFT correlation."""

import numpy as np

from . import _kernels

# above this many pairs the O(H log H) correlation beats pairwise scanning
PAIRWISE_LIMIT = 20_000_000


def _correlate(a_mask, b_mask):
    """c[n] = #{i : a[i] and b[i+n]} for n >= 0, rounded to integers."""
    n = a_mask.shape[0] + b_mask.shape[0]
    size = 1 << int(n - 1).bit_length()
    fa = np.fft.rfft(a_mask.astype(np.float64), size)
    fb = np.fft.rfft(b_mask.astype(np.float64), size)
    c = np.fft.irfft(np.conj(fa) * fb, size)
    return np.rint(c[: b_mask.shape[0]]).astype(np.int64)


def shift_matches(a, b, horizon):
    """Mask over [0, horizon): n is marked when a_i + n = b_j for some i, j.

    ``a`` and ``b`` are sorted int64 arrays of non-negative integers.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0 or b.size == 0 or horizon <= 0:
        return np.zeros(max(horizon, 0), dtype=bool)
    if a.size * b.size <= PAIRWISE_LIMIT:
        return _kernels.cross_differences(a, b, horizon)
    top = int(max(a[-1], b[-1])) + 1
    am = np.zeros(top, dtype=bool)
    bm = np.zeros(top, dtype=bool)
    am[a] = True
    bm[b] = True
    c = _correlate(am, bm)
    out = np.zeros(horizon, dtype=bool)
    k = min(horizon, c.shape[0])
    out[:k] = c[:k] > 0
    return out


def positive_differences(elems, horizon):
    """Mask over [0, horizon) of {b - a : a < b both in elems}."""
    elems = np.asarray(elems, dtype=np.int64)
    if elems.size * elems.size <= PAIRWISE_LIMIT:
        return _kernels.pair_differences(elems, horizon)
    out = shift_matches(elems, elems, horizon)
    if horizon > 0:
        out[0] = False
    return out
