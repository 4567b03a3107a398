"""Hot scanning kernels with a selectable backend.

``RECFORGE_KERNELS=numpy`` forces the pure-numpy path; the default is numba
when it imports, numpy otherwise.  Both backends take and return plain numpy
arrays, so callers never see which one ran.
"""

import os

import numpy as np

from . import _numpy as numpy_impl

try:
    from . import _numba as numba_impl
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba_impl = None


def _select():
    choice = os.environ.get("RECFORGE_KERNELS", "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"RECFORGE_KERNELS must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and numba_impl is not None:
        return "numba", numba_impl
    return "numpy", numpy_impl


BACKEND, _impl = _select()


def _u8(x):
    return np.ascontiguousarray(x, dtype=np.uint8)


def _i64(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def match_mask(x, a):
    """Boolean mask over [0, len(x)-len(a)] marking where ``a`` occurs in ``x``."""
    return _impl.match_mask(_u8(x), _u8(a))


def rolling_codes(x, k):
    """Integer code of every k-block of ``x`` (most significant bit first); k <= 62."""
    if not 1 <= k <= 62:
        raise ValueError("rolling codes need 1 <= k <= 62")
    return _impl.rolling_codes(_u8(x), int(k))


def pattern_codes(ids, offsets, r, n):
    return _impl.pattern_codes(_i64(ids), _i64(offsets), int(r), int(n))


def pair_differences(elems, horizon):
    return _impl.pair_differences(_i64(elems), int(horizon))


def cross_differences(a, b, horizon):
    return _impl.cross_differences(_i64(a), _i64(b), int(horizon))


def warm_up():
    """Trigger JIT compilation on tiny inputs so later timings exclude it."""
    x = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
    match_mask(x, x[:2])
    rolling_codes(x, 2)
    pattern_codes(np.array([0, 1, -1, 1]), np.array([0, 1]), 2, 3)
    e = np.array([1, 3, 4])
    pair_differences(e, 5)
    cross_differences(e, e, 5)
    prefix_lcp(x)


def prefix_lcp(x):
    """z[i] = length of the longest common prefix of x and x[i:] (z[0] = len(x))."""
    return _impl.prefix_lcp(_u8(x))
