"""IP sets: extraction from a recurrent prefix, finite Hindman search, and
superincreasing IP sets whose difference sets stay inside a thick set."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import BudgetExceeded, ConstructionError, PreconditionError, enumeration_budget
from ..families import fs_sums, run_profile
from ..subshift import occurrence_mask, recurrence_certificate
from ..windowset import WindowSet
from ..words import as_prefix


@dataclass(frozen=True)
class FSGenerators:
    gens: tuple

    def __post_init__(self):
        gens = tuple(int(p) for p in self.gens)
        if not gens:
            raise ValueError("need at least one generator")
        if min(gens) < 1:
            raise ValueError("generators must be positive")
        object.__setattr__(self, "gens", gens)

    @property
    def superincreasing(self):
        total = 0
        for p in self.gens:
            if p <= total:
                return False
            total += p
        return True

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def extract_ip(x, depth) -> FSGenerators:
    """Generators p_1..p_d with FS(p_n..p_d) inside N(x, [x[0:n]]) for every n <= d.

    Each p_{n} is the least admissible value larger than p_1 + ... + p_{n-1};
    admissible means p lands in the depth-n cylinder and p + m lands in the
    depth-j cylinder for every m in FS(p_j..p_{n-1}), j < n.
    """
    x = as_prefix(x)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    returns = recurrence_certificate(x, depth)
    missing = [k for k, t in returns.items() if t is None]
    if missing:
        raise PreconditionError(
            f"prefix is not recurrent to depth {depth} on the window "
            f"(cylinder of length {missing[0]} never returns)")
    occ = [None] + [occurrence_mask(x, x.word[:n]) for n in range(1, depth + 1)]
    gens = []
    for n in range(1, depth + 1):
        sigma = sum(gens)
        cand = np.flatnonzero(occ[n])
        cand = cand[cand > sigma]
        for j in range(1, n):
            target = occ[j]
            for m in fs_sums(gens[j - 1:]).tolist():
                cand = cand[cand + m < target.shape[0]]
                cand = cand[target[cand + m]]
        if cand.size == 0:
            raise ConstructionError(
                f"stage {n}: window of length {x.horizon} exhausted before a generator "
                f"satisfying all {2 ** (n - 1) - 1} pullback constraints was found", stage=n)
        gens.append(int(cand[0]))
    return FSGenerators(tuple(gens))


def _color_table(gens, coloring):
    d = len(gens)
    masks = np.arange(1 << d)
    bits = (masks[:, None] >> np.arange(d)) & 1
    sums = bits @ np.asarray(gens, dtype=np.int64)
    if callable(coloring):
        colors = [coloring(int(s)) for s in sums[1:]]
    else:
        missing = [int(s) for s in sums[1:] if int(s) not in coloring]
        if missing:
            raise ValueError(f"coloring is not total on FS(gens): missing {missing[:5]}")
        colors = [coloring[int(s)] for s in sums[1:]]
    _, table = np.unique(np.asarray(colors), return_inverse=True)
    return sums, np.r_[-1, table]


def hindman_search(gens, coloring, m, budget=None) -> Optional[tuple]:
    """Search for q_1 < ... < q_m, sums over pairwise disjoint blocks of ``gens``,
    with FS(q_1..q_m) monochromatic.

    ``coloring`` maps every element of FS(gens) to a color (dict or callable).
    Returns None when the search space (or budget) is exhausted; that is not
    a refutation of Hindman's theorem.
    """
    gens = FSGenerators(tuple(gens))
    if not gens.superincreasing:
        raise PreconditionError("hindman_search needs superincreasing generators")
    if m < 1:
        raise ValueError("m must be >= 1")
    d = len(gens)
    sums, color = _color_table(gens.gens, coloring)
    allmasks = np.arange(1, 1 << d)
    cap = enumeration_budget(budget)
    examined = 0

    def extend(chosen, unions, used, last):
        nonlocal examined
        if len(chosen) == m:
            return chosen
        cand = allmasks[(allmasks > last) & ((allmasks & used) == 0)]
        examined += cand.size
        if examined > cap:
            raise BudgetExceeded("hindman search budget exhausted", examined, cap)
        if chosen:
            c = color[chosen[0]]
            ok = color[cand] == c
            for u in unions:
                ok &= color[cand | u] == c
            cand = cand[ok]
        for q in cand.tolist():
            found = extend(chosen + [q], unions + [q] + [q | u for u in unions], used | q, q)
            if found:
                return found
        return None

    try:
        found = extend([], [], 0, 0)
    except BudgetExceeded:
        return None
    if found is None:
        return None
    return tuple(int(sums[q]) for q in found)


def runs_of(F):
    """(start, length) runs of a thick set given as an indicator or as a run list."""
    if isinstance(F, (list, tuple)):
        runs = sorted((int(s), int(n)) for s, n in F)
        for (s0, n0), (s1, _) in zip(runs, runs[1:]):
            if s0 + n0 > s1:
                raise ValueError("runs overlap")
        return runs
    x = as_prefix(F)
    return list(run_profile(WindowSet.from_mask(x.word.astype(bool))).runs)


def in_runs(runs, values) -> np.ndarray:
    """Membership of ``values`` in the union of the runs."""
    values = np.asarray(values, dtype=np.int64)
    if not runs:
        return np.zeros(values.shape, dtype=bool)
    starts = np.array([s for s, _ in runs], dtype=np.int64)
    ends = starts + np.array([n for _, n in runs], dtype=np.int64)
    i = np.searchsorted(starts, values, side="right") - 1
    ok = i >= 0
    ok[ok] = values[ok] < ends[i[ok]]
    return ok


def rapid_ip(F, depth) -> FSGenerators:
    """Superincreasing generators with FS and FS - FS inside the thick set F.

    Each new generator p is the least c > sigma (sigma = sum so far) with
    [c - sigma, c + sigma] inside one run of F, so every new sum and every new
    difference stays in that run.  ``F`` is an indicator prefix or a list of
    (start, length) runs.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    runs = runs_of(F)
    gens = []
    sigma = 0
    for stage in range(1, depth + 1):
        need = 2 * sigma + 1
        p = None
        for s, n in runs:
            c = max(s + sigma, sigma + 1)
            if c + sigma <= s + n - 1:
                p = c
                break
        if p is None:
            raise ConstructionError(
                f"stage {stage}: no run of length >= {need} with a point beyond {sigma}", stage=stage,
                partial=FSGenerators(tuple(gens)) if gens else None)
        gens.append(p)
        sigma += p
    return FSGenerators(tuple(gens))
