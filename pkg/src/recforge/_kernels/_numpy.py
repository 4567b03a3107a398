"""Pure-numpy implementations of the scanning kernels."""

import numpy as np


def match_mask(x, a):
    n = x.shape[0] - a.shape[0] + 1
    if n <= 0:
        return np.zeros(0, dtype=np.bool_)
    if a.shape[0] == 0:
        return np.ones(n, dtype=np.bool_)
    # candidate filtering: the survivor set shrinks quickly on binary words
    cand = np.flatnonzero(x[:n] == a[0])
    for j in range(1, a.shape[0]):
        if cand.size == 0:
            break
        cand = cand[x[cand + j] == a[j]]
    out = np.zeros(n, dtype=np.bool_)
    out[cand] = True
    return out


def rolling_codes(x, k):
    n = x.shape[0] - k + 1
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.zeros(n, dtype=np.int64)
    for j in range(k):
        codes <<= 1
        codes |= x[j:j + n].astype(np.int64)
    return codes


def pattern_codes(ids, offsets, r, n):
    codes = np.zeros(n, dtype=np.int64)
    valid = np.ones(n, dtype=np.bool_)
    for off in offsets:
        v = ids[off:off + n]
        valid &= v >= 0
        codes = codes * r + np.where(v >= 0, v, 0)
    codes[~valid] = -1
    return codes


def pair_differences(elems, horizon):
    out = np.zeros(max(horizon, 0), dtype=np.bool_)
    n = elems.shape[0]
    # row chunks keep the outer difference below ~4M entries
    step = max(1, 4_000_000 // max(n, 1))
    for lo in range(0, n, step):
        d = elems[None, :] - elems[lo:lo + step, None]
        d = d[(d > 0) & (d < horizon)]
        out[d] = True
    return out


def cross_differences(a, b, horizon):
    """out[n] is True when some a_i + n equals some b_j (n >= 0)."""
    out = np.zeros(max(horizon, 0), dtype=np.bool_)
    step = max(1, 4_000_000 // max(b.shape[0], 1))
    for lo in range(0, a.shape[0], step):
        d = b[None, :] - a[lo:lo + step, None]
        d = d[(d >= 0) & (d < horizon)]
        out[d] = True
    return out


def _rank_levels(x):
    """ranks[j][i] identifies the block x[i : i + 2**j]."""
    levels = [x.astype(np.int64)]
    H = x.shape[0]
    L = 1
    while 2 * L <= H:
        r = levels[-1]
        n = H - 2 * L + 1
        key = r[:n] * (int(r.max()) + 1) + r[L:L + n]
        levels.append(np.unique(key, return_inverse=True)[1].astype(np.int64))
        L *= 2
    return levels


def prefix_lcp(x):
    H = x.shape[0]
    if H == 0:
        return np.zeros(0, dtype=np.int64)
    levels = _rank_levels(x)
    t = np.arange(H, dtype=np.int64)
    lcp = np.zeros(H, dtype=np.int64)
    for j in range(len(levels) - 1, -1, -1):
        L = 1 << j
        r = levels[j]
        ok = t + lcp + L <= H
        idx = np.flatnonzero(ok)
        same = r[lcp[idx]] == r[t[idx] + lcp[idx]]
        lcp[idx[same]] += L
    return lcp
