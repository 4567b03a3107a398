"""numba-compiled versions of the scanning kernels.

Signatures and results are identical to ``_numpy``; the test-suite runs both
and compares them element for element.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def match_mask(x, a):
    L = a.shape[0]
    n = x.shape[0] - L + 1
    if n <= 0:
        return np.zeros(0, dtype=np.bool_)
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        ok = True
        for j in range(L):
            if x[i + j] != a[j]:
                ok = False
                break
        out[i] = ok
    return out


@njit(cache=True)
def rolling_codes(x, k):
    n = x.shape[0] - k + 1
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.empty(n, dtype=np.int64)
    mask = (np.int64(1) << k) - 1
    c = np.int64(0)
    for j in range(k - 1):
        c = (c << 1) | np.int64(x[j])
    for i in range(n):
        c = ((c << 1) | np.int64(x[i + k - 1])) & mask
        codes[i] = c
    return codes


@njit(cache=True)
def pattern_codes(ids, offsets, r, n):
    codes = np.empty(n, dtype=np.int64)
    m = offsets.shape[0]
    for i in range(n):
        c = np.int64(0)
        for t in range(m):
            v = ids[i + offsets[t]]
            if v < 0:
                c = -1
                break
            c = c * r + v
        codes[i] = c
    return codes


@njit(cache=True)
def pair_differences(elems, horizon):
    out = np.zeros(max(horizon, 0), dtype=np.bool_)
    n = elems.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            d = elems[j] - elems[i]
            if d >= horizon:
                break
            if d > 0:
                out[d] = True
    return out


@njit(cache=True)
def cross_differences(a, b, horizon):
    out = np.zeros(max(horizon, 0), dtype=np.bool_)
    nb = b.shape[0]
    for i in range(a.shape[0]):
        ai = a[i]
        lo = np.searchsorted(b, ai)
        for j in range(lo, nb):
            d = b[j] - ai
            if d >= horizon:
                break
            out[d] = True
    return out


@njit(cache=True)
def prefix_lcp(x):
    # Z-algorithm: z[i] = length of the longest common prefix of x and x[i:]
    n = x.shape[0]
    z = np.zeros(n, dtype=np.int64)
    if n == 0:
        return z
    z[0] = n
    left = 0
    right = 0
    for i in range(1, n):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < n and x[z[i]] == x[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left = i
            right = i + z[i]
    return z
