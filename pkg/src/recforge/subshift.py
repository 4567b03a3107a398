"""Cylinders, return-time sets, block complexity and recurrence certificates on
finite prefixes of binary points.

The language of the orbit closure is approximated by the blocks that occur in
the prefix, so every certificate here holds "on the window" only.  N(U, V) is
approximated by co-occurrence inside the prefix.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels, _setops
from .windowset import WindowSet
from .words import PointPrefix, as_prefix, as_word, word_str


@dataclass(frozen=True)
class BlockStats:
    k: int
    count: int
    entropy_estimate: float  # (1/k) ln(count), natural log

    @classmethod
    def from_count(cls, k, count):
        return cls(k=k, count=int(count), entropy_estimate=math.log(count) / k)


def _check_block(x, A):
    if A.size == 0:
        raise ValueError("blocks must be non-empty")
    if A.size > x.horizon:
        raise ValueError(f"block of length {A.size} is longer than the window {x.horizon}")


def occurrence_mask(x, A) -> np.ndarray:
    x = as_prefix(x)
    A = as_word(A)
    _check_block(x, A)
    return _kernels.match_mask(x.word, A)


def occurrences(x, A) -> WindowSet:
    """N(x, [A]) on the window: positions n in [0, H-|A|] where A occurs."""
    m = occurrence_mask(x, A)
    return WindowSet(m.shape[0], np.flatnonzero(m))


def hitting_times(x, A, B) -> WindowSet:
    """{n >= 0 : A occurs at some i and B at i + n}, the prefix approximation of N([A], [B])."""
    x = as_prefix(x)
    occ_a = occurrences(x, A)
    occ_b = occurrences(x, B)
    horizon = occ_b.horizon
    mask = _setops.shift_matches(occ_a.elements, occ_b.elements, horizon)
    return WindowSet(horizon, np.flatnonzero(mask))


def _doubling_ids(w, k):
    H = w.shape[0]
    r = w.astype(np.int64)
    L = 1
    while 2 * L <= k:
        n = H - 2 * L + 1
        key = r[:n] * (int(r.max()) + 1) + r[L:L + n]
        r = np.unique(key, return_inverse=True)[1].astype(np.int64)
        L *= 2
    n = H - k + 1
    if L == k:
        return r[:n]
    key = r[:n] * (int(r.max()) + 1) + r[k - L:k - L + n]
    return np.unique(key, return_inverse=True)[1].astype(np.int64)


def block_ids(x, k, method="auto") -> np.ndarray:
    """Integer label for the k-block at every position; equal labels iff equal blocks.

    ``method`` is "codes" (bit packing, k <= 62), "doubling" (prefix-doubling
    ranks, any k) or "auto".
    """
    w = as_prefix(x).word
    if not 1 <= k <= w.shape[0]:
        raise ValueError(f"block length must be in [1, {w.shape[0]}]")
    if method == "auto":
        method = "codes" if k <= 62 else "doubling"
    if method == "codes":
        return _kernels.rolling_codes(w, k)
    if method == "doubling":
        return _doubling_ids(w, k)
    raise ValueError(f"unknown method {method!r}")


def block_count(x, k, method="auto") -> int:
    """B_k: number of distinct k-blocks occurring in the prefix."""
    return int(np.unique(block_ids(x, k, method)).size)


def block_set(x, k):
    x = as_prefix(x)
    ids = block_ids(x, k)
    _, first = np.unique(ids, return_index=True)
    words = {word_str(x.word[p:p + k]) for p in first.tolist()}
    return words, BlockStats.from_count(k, len(words))


def entropy_curve(x, k_max):
    x = as_prefix(x)
    if k_max < 1 or 4 * k_max > x.horizon:
        raise ValueError(f"k_max must be in [1, H/4] = [1, {x.horizon // 4}]")
    return [BlockStats.from_count(k, block_count(x, k)) for k in range(1, k_max + 1)]


def recurrence_certificate(x, k) -> dict:
    """First return time of each prefix cylinder [x[0:k']], k' = 1..k (None if none)."""
    x = as_prefix(x)
    if k < 1 or 2 * k > x.horizon:
        raise ValueError(f"depth must be in [1, H/2] = [1, {x.horizon // 2}]")
    z = _kernels.prefix_lcp(x.word)
    z[0] = 0
    reach = np.maximum.accumulate(z)
    out = {}
    for kk in range(1, k + 1):
        t = int(np.searchsorted(reach, kk))
        out[kk] = t if t < x.horizon else None
    return out


def _grouped_positions(ids):
    order = np.argsort(ids, kind="stable")
    sorted_ids = ids[order]
    starts = np.flatnonzero(np.r_[True, sorted_ids[1:] != sorted_ids[:-1]])
    return order, starts


def minimality_certificate(x, k) -> dict:
    """For every block u with |u| <= k occurring in x, its largest occurrence gap.

    The gap is the syndetic gap of the occurrence set on [0, H-|u|]: the
    largest of first+1, consecutive differences and (H-|u|+1) - last.
    """
    x = as_prefix(x)
    if k < 1 or 4 * k > x.horizon:
        raise ValueError(f"k must be in [1, H/4] = [1, {x.horizon // 4}]")
    out = {}
    for j in range(1, k + 1):
        hocc = x.horizon - j + 1
        ids = block_ids(x, j)
        pos, starts = _grouped_positions(ids)
        ends = np.r_[starts[1:], pos.size]
        diffs = np.diff(pos, append=pos[-1])
        diffs[ends - 1] = 0  # no difference across group boundaries
        inner = np.maximum.reduceat(diffs, starts)
        head = pos[starts] + 1
        tail = hocc - pos[ends - 1]
        gaps = np.maximum(np.maximum(inner, head), tail)
        for p, g in zip(pos[starts].tolist(), gaps.tolist()):
            out[word_str(x.word[p:p + j])] = int(g)
    return out


def minimal_bound(gaps: dict) -> int:
    """Smallest L certifying minimality to the certificate's depth."""
    return max(gaps.values())


def weak_mixing_witness(x, k) -> dict:
    """For each occurring k-block A, the least s >= 0 with s, s+1 in N([A], [A]), or None."""
    x = as_prefix(x)
    if k < 1 or 4 * k > x.horizon:
        raise ValueError(f"k must be in [1, H/4] = [1, {x.horizon // 4}]")
    ids = block_ids(x, k)
    pos, starts = _grouped_positions(ids)
    ends = np.r_[starts[1:], pos.size]
    hocc = x.horizon - k + 1
    out = {}
    for s, e in zip(starts.tolist(), ends.tolist()):
        occ = np.sort(pos[s:e])
        hits = _setops.positive_differences(occ, hocc)
        hits[0] = True
        both = np.flatnonzero(hits[:-1] & hits[1:])
        out[word_str(x.word[occ[0]:occ[0] + k])] = int(both[0]) if both.size else None
    return out


def regular_minimal_witness(x, A) -> Optional[int]:
    """Least k with {0, k, 2k, ...} in [0, H-|A|] all occurrences of A; k ranges up to H/4."""
    x = as_prefix(x)
    m = occurrence_mask(x, A)
    if not m[0]:
        return None
    for k in range(1, max(1, x.horizon // 4) + 1):
        if m[::k].all():
            return k
    return None
