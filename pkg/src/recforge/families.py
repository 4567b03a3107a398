"""Finite-horizon detectors and certificates for syndetic, thick, piecewise
syndetic, thickly syndetic, density and IP-type families.

All notions are asymptotic; here they are certified on a window [0, H).
A set is "g-syndetic on the window" when every interval [i, i+g) lying inside
[0, H) meets it.  To keep that claim meaningful a gap is only reported when at
least ``MIN_WINDOWS`` disjoint intervals of that length fit in the window.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Optional

import numpy as np

from . import _setops
from .errors import BudgetExceeded, enumeration_budget
from .windowset import WindowSet

MIN_WINDOWS = 4


@dataclass(frozen=True)
class SyndeticCert:
    gap: int
    kind: ClassVar[str] = "SyndeticCert"

    def fields(self):
        return [("gap", str(self.gap))]


@dataclass(frozen=True)
class ThickCert:
    runs: tuple
    max_run: int
    kind: ClassVar[str] = "ThickCert"

    def fields(self):
        runs = " ".join(f"{s}+{n}" for s, n in self.runs)
        return [("max_run", str(self.max_run)), ("run_count", str(len(self.runs))),
                ("runs", runs)]


@dataclass(frozen=True)
class PiecewiseSyndeticCert:
    gap: int
    interval: tuple

    kind: ClassVar[str] = "PiecewiseSyndeticCert"

    @property
    def length(self):
        return self.interval[1] - self.interval[0]

    def fields(self):
        return [("gap", str(self.gap)), ("interval", f"{self.interval[0]} {self.interval[1]}")]


@dataclass(frozen=True)
class ThicklySyndeticCert:
    entries: tuple  # (run length n, gap g_n)
    kind: ClassVar[str] = "ThicklySyndeticCert"

    def fields(self):
        return [("entries", " ".join(f"{n}:{g}" for n, g in self.entries))]


@dataclass(frozen=True)
class DensityCert:
    window_length: int
    upper_banach: Fraction
    upper_density: Fraction
    kind: ClassVar[str] = "DensityCert"

    def fields(self):
        return [("window_length", str(self.window_length)),
                ("upper_banach", str(self.upper_banach)),
                ("upper_density", str(self.upper_density))]


def max_hole(S: WindowSet) -> int:
    """Length of the longest run of non-members in [0, H), edges included."""
    e = S.elements
    if e.size == 0:
        return S.horizon
    holes = [int(e[0]), S.horizon - 1 - int(e[-1])]
    if e.size > 1:
        holes.append(int(np.diff(e).max()) - 1)
    return max(holes)


def syndetic_gap(S: WindowSet, min_windows: int = MIN_WINDOWS) -> Optional[int]:
    """Least g with every [i, i+g) inside the window meeting S, or None.

    None is returned for the empty set and whenever that g exceeds
    ``H // min_windows``: a hole that large is indistinguishable, on this
    window, from an unbounded one.
    """
    g = max_hole(S) + 1
    if g > max(1, S.horizon // min_windows):
        return None
    return g


def syndetic_certificate(S: WindowSet) -> Optional[SyndeticCert]:
    g = syndetic_gap(S)
    return None if g is None else SyndeticCert(g)


def _runs(elements):
    if elements.size == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    breaks = np.flatnonzero(np.diff(elements) != 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [elements.size - 1]))
    return elements[starts], ends - starts + 1


def run_profile(S: WindowSet) -> ThickCert:
    starts, lengths = _runs(S.elements)
    runs = tuple(zip(starts.tolist(), lengths.tolist()))
    return ThickCert(runs=runs, max_run=int(lengths.max()) if lengths.size else 0)


def piecewise_syndetic_witness(S: WindowSet, g: int) -> Optional[PiecewiseSyndeticCert]:
    """Longest interval [a, b) on which S is relatively g-syndetic.

    Intervals are anchored at a member of S: a chain of members with
    consecutive differences <= g, starting at e_s and ending at e_t, yields
    [e_s, min(H, e_t + g)).  Intervals shorter than 2g are not accepted.
    """
    if g < 1:
        raise ValueError("gap must be >= 1")
    e = S.elements
    if e.size == 0:
        return None
    breaks = np.flatnonzero(np.diff(e) > g)
    first = np.concatenate(([0], breaks + 1))
    last = np.concatenate((breaks, [e.size - 1]))
    a = e[first]
    b = np.minimum(e[last] + g, S.horizon)
    best = int(np.argmax(b - a))
    if b[best] - a[best] < 2 * g:
        return None
    return PiecewiseSyndeticCert(gap=g, interval=(int(a[best]), int(b[best])))


def run_lengths_from(mask) -> np.ndarray:
    """r[i] = number of consecutive True entries starting at position i."""
    mask = np.asarray(mask, dtype=bool)
    H = mask.shape[0]
    idx = np.arange(H)
    nxt = np.where(mask, H, idx)
    nxt = np.minimum.accumulate(nxt[::-1])[::-1]
    return nxt - idx


def run_starts(S: WindowSet, n: int) -> WindowSet:
    """Positions i with [i, i+n) contained in S, as a set on [0, H-n]."""
    r = run_lengths_from(S.mask())
    return WindowSet(S.horizon - n + 1, np.flatnonzero(r >= n))


def thickly_syndetic_profile(S: WindowSet, n_max: int) -> Optional[ThicklySyndeticCert]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max >= S.horizon:
        return None
    r = run_lengths_from(S.mask())
    entries = []
    for n in range(1, n_max + 1):
        starts = WindowSet(S.horizon - n + 1, np.flatnonzero(r >= n))
        g = syndetic_gap(starts)
        if g is None:
            return None
        entries.append((n, g))
    return ThicklySyndeticCert(tuple(entries))


def fs_sums(gens, cap=None) -> np.ndarray:
    """Sorted distinct finite sums of ``gens`` below ``cap`` (all of them if cap is None)."""
    gens = [int(p) for p in gens]
    if not gens:
        raise ValueError("FS of an empty generator list is undefined")
    if min(gens) < 1:
        raise ValueError("generators must be positive")
    total = sum(gens)
    limit = total + 1 if cap is None else min(int(cap), total + 1)
    if limit > 1 << 62:
        raise OverflowError(f"subset sums up to {total} do not fit in 64 bits")
    budget = enumeration_budget()
    sums = np.zeros(1, dtype=np.int64)  # the empty sum, dropped at the end
    for p in gens:
        grown = sums + p
        sums = np.union1d(sums, grown[grown < limit])
        if sums.size > budget:
            raise BudgetExceeded(f"FS enumeration exceeds budget {budget}", sums.size, budget)
    return sums[1:]


def fs_set(gens, cap=None) -> WindowSet:
    sums = fs_sums(gens, cap)
    horizon = sum(int(p) for p in gens) + 1 if cap is None else int(cap)
    return WindowSet(horizon, sums)


def difference_set(S: WindowSet) -> WindowSet:
    mask = _setops.positive_differences(S.elements, S.horizon)
    return WindowSet(S.horizon, np.flatnonzero(mask))


def _max_ratio(counts, denoms):
    approx = counts / denoms
    top = approx.max()
    near = np.flatnonzero(approx >= top * (1 - 1e-9))
    return max(Fraction(int(counts[i]), int(denoms[i])) for i in near)


def density_report(S: WindowSet, ell: int) -> DensityCert:
    H = S.horizon
    if not 1 <= ell <= H:
        raise ValueError(f"window length must be in [1, {H}]")
    csum = np.concatenate(([0], np.cumsum(S.mask(), dtype=np.int64)))
    banach = Fraction(int((csum[ell:] - csum[:-ell]).max()), ell)
    n = np.arange(ell, H + 1)
    density = _max_ratio(csum[ell:], n)
    return DensityCert(window_length=ell, upper_banach=banach, upper_density=density)


def ip_star_probe(S: WindowSet, batch) -> list:
    """For each generator list, whether S meets the FS set it spans.

    All-True is finite evidence toward IP*-membership, not a proof.
    """
    report = []
    for gens in batch:
        if sum(int(p) for p in gens) >= S.horizon:
            raise ValueError(f"FS({list(gens)}) leaves the window [0, {S.horizon})")
        fs = fs_sums(gens)
        report.append(bool(np.isin(fs, S.elements).any()))
    return report
