"""Binary words, point prefixes and the built-in word generators."""

from dataclasses import dataclass
from math import factorial

import numpy as np


def as_word(w) -> np.ndarray:
    """Coerce a '0'/'1' string, a sequence of bits or a PointPrefix to a uint8 array."""
    if isinstance(w, PointPrefix):
        return w.word
    if isinstance(w, str):
        arr = np.frombuffer(w.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(w, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("words are over the alphabet {0, 1}")
    return np.ascontiguousarray(arr, dtype=np.uint8)


def word_str(w) -> str:
    return (as_word(w) + ord("0")).tobytes().decode("ascii")


@dataclass(frozen=True, eq=False)
class PointPrefix:
    """The first H symbols of a point in {0,1}^Z+."""

    word: np.ndarray
    label: str = ""

    def __post_init__(self):
        w = as_word(self.word)
        if w.size < 1:
            raise ValueError("a point prefix needs at least one symbol")
        w.flags.writeable = False
        object.__setattr__(self, "word", w)

    @property
    def horizon(self):
        return int(self.word.shape[0])

    def __len__(self):
        return self.horizon

    def __str__(self):
        return word_str(self.word)

    def __eq__(self, other):
        if not isinstance(other, PointPrefix):
            return NotImplemented
        return np.array_equal(self.word, other.word)

    __hash__ = None


def as_prefix(x, label="") -> PointPrefix:
    return x if isinstance(x, PointPrefix) else PointPrefix(as_word(x), label)


def periodic(pattern, horizon) -> PointPrefix:
    p = as_word(pattern)
    reps = -(-horizon // p.size)
    return PointPrefix(np.tile(p, reps)[:horizon], f"periodic:{word_str(p)}")


def thue_morse(horizon) -> PointPrefix:
    n = np.arange(horizon, dtype=np.uint64)
    return PointPrefix((np.bitwise_count(n) & 1).astype(np.uint8), "thue-morse")


def de_bruijn(order) -> np.ndarray:
    """Binary de Bruijn cycle of the given order (length 2**order), lexicographically least."""
    a = [0] * (2 * order)
    seq = []

    def db(t, p):
        if t > order:
            if order % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, 2):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return np.array(seq, dtype=np.uint8)


def de_bruijn_prefix(order, horizon=None) -> PointPrefix:
    """The de Bruijn cycle repeated cyclically; contains every block of length <= order.

    The default horizon is the shortest that does: 2**order + order - 1.
    """
    cyc = de_bruijn(order)
    if horizon is None:
        horizon = cyc.size + order - 1
    if horizon < cyc.size + order - 1:
        raise ValueError("horizon too short to contain every block of that order")
    reps = -(-horizon // cyc.size)
    return PointPrefix(np.tile(cyc, reps)[:horizon], f"de-bruijn:{order}")


def indicator(elements, horizon, label="") -> PointPrefix:
    w = np.zeros(horizon, dtype=np.uint8)
    e = np.asarray(list(elements), dtype=np.int64)
    w[e[e < horizon]] = 1
    return PointPrefix(w, label)


def powers_of_two(horizon) -> PointPrefix:
    """Indicator of {0} together with the powers of two (so the point lies in [1])."""
    pts = [0]
    p = 1
    while p < horizon:
        pts.append(p)
        p *= 2
    return indicator(pts, horizon, "powers2")


def factorials(horizon) -> PointPrefix:
    """Indicator of {j! : j >= 1}."""
    pts = []
    j = 1
    while factorial(j) < horizon:
        pts.append(factorial(j))
        j += 1
    return indicator(pts, horizon, "factorials")


def runs_indicator(runs, horizon, label="runs") -> PointPrefix:
    """Indicator of a union of runs given as (start, length) pairs."""
    w = np.zeros(horizon, dtype=np.uint8)
    for s, n in runs:
        w[max(s, 0):min(s + n, horizon)] = 1
    return PointPrefix(w, label)


def single_one(horizon) -> PointPrefix:
    w = np.zeros(horizon, dtype=np.uint8)
    w[0] = 1
    return PointPrefix(w, "single-one")


def constant(symbol, horizon) -> PointPrefix:
    return PointPrefix(np.full(horizon, symbol, dtype=np.uint8), f"constant:{symbol}")


def complement_of_progressions(moduli, horizon, offsets=None) -> PointPrefix:
    """{0} together with the complement of the union of progressions offset + q*N."""
    w = np.ones(horizon, dtype=np.uint8)
    offsets = offsets or [0] * len(moduli)
    for q, r in zip(moduli, offsets):
        w[r::q] = 0
    w[0] = 1
    return PointPrefix(w, "co-progressions:" + ",".join(f"{r}+{q}N" for q, r in zip(moduli, offsets)))


def geometric_runs(base, horizon) -> PointPrefix:
    """{0} together with the runs [b^j, b^j + b^(j-1)), j >= 1: a thick set containing 0."""
    runs = [(0, 1)]
    j = 1
    while base ** j < horizon:
        runs.append((base ** j, base ** (j - 1)))
        j += 1
    return runs_indicator(runs, horizon, f"geometric-runs:{base}")


GENERATORS = {
    "periodic": "periodic:<pattern>",
    "thue-morse": "thue-morse",
    "de-bruijn": "de-bruijn:<order>",
    "powers2": "powers2",
    "factorials": "factorials",
    "single-one": "single-one",
    "zeros": "zeros",
    "ones": "ones",
    "geometric-runs": "geometric-runs:<base>",
    "co-multiples": "co-multiples:<q>",
}


def generate(spec, horizon) -> PointPrefix:
    """Build a word from a generator spec such as ``periodic:011`` or ``de-bruijn:10``."""
    name, _, arg = spec.partition(":")
    if name == "periodic":
        return periodic(arg, horizon)
    if name == "thue-morse":
        return thue_morse(horizon)
    if name == "de-bruijn":
        return de_bruijn_prefix(int(arg), horizon)
    if name == "powers2":
        return powers_of_two(horizon)
    if name == "factorials":
        return factorials(horizon)
    if name == "single-one":
        return single_one(horizon)
    if name == "zeros":
        return constant(0, horizon)
    if name == "ones":
        return constant(1, horizon)
    if name == "geometric-runs":
        return geometric_runs(int(arg), horizon)
    if name == "co-multiples":
        return complement_of_progressions([int(arg)], horizon)
    raise ValueError(f"unknown generator {spec!r}; known: {', '.join(GENERATORS.values())}")
