"""Independence sets for tuples of cylinders, checked on a prefix.

J is an independence set for blocks (A_0, ..., A_{r-1}) when every pattern
s: J -> {0..r-1} is realized: some position i has A_{s(j)} at i + j for all
j in J.  Patterns are written as tuples over the sorted elements of J and
use 0-based block indices.
"""

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Optional

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, enumeration_budget
from .subshift import occurrence_mask
from .words import PointPrefix, as_prefix, as_word

MAX_J = 12


@dataclass(frozen=True)
class IndependenceQuery:
    x: PointPrefix
    blocks: tuple
    J: tuple

    def __init__(self, x, blocks, J, cap=MAX_J):
        x = as_prefix(x)
        blocks = tuple(as_word(b) for b in blocks)
        J = tuple(sorted({int(j) for j in J}))
        if len(blocks) < 2:
            raise ValueError("need at least two blocks")
        if len({b.size for b in blocks}) != 1 or blocks[0].size == 0:
            raise ValueError("blocks must be non-empty and of one common length")
        if len({b.tobytes() for b in blocks}) != len(blocks):
            raise ValueError("blocks must be distinct")
        if not J or J[0] < 0:
            raise ValueError("J must be a non-empty set of non-negative shifts")
        if len(J) > cap:
            raise ValueError(f"|J| = {len(J)} exceeds the cap {cap}")
        if J[-1] + blocks[0].size > x.horizon:
            raise ValueError(f"max(J) + block length exceeds the window {x.horizon}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "J", J)

    @property
    def r(self):
        return len(self.blocks)

    @property
    def patterns(self):
        return self.r ** len(self.J)


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    witnesses: Optional[dict]  # pattern -> first position realizing it
    missing: Optional[tuple]  # least pattern never realized
    realized: int


def _block_ids(q):
    ids = np.full(q.x.horizon - q.blocks[0].size + 1, -1, dtype=np.int64)
    for i, A in enumerate(q.blocks):
        ids[occurrence_mask(q.x, A)] = i
    return ids


def _decode(code, r, t):
    digits = []
    for _ in range(t):
        code, d = divmod(code, r)
        digits.append(d)
    return tuple(reversed(digits))


def check_independence(q: IndependenceQuery, budget=None) -> IndependenceResult:
    total = q.patterns
    cap = enumeration_budget(budget)
    if total > cap:
        raise BudgetExceeded(f"{q.r}^{len(q.J)} = {total} patterns exceed the budget {cap}",
                             total, cap)
    ids = _block_ids(q)
    n = ids.shape[0] - q.J[-1]
    codes = _kernels.pattern_codes(ids, np.asarray(q.J), q.r, n)
    found, first = np.unique(codes, return_index=True)
    keep = found >= 0
    found, first = found[keep], first[keep]
    t = len(q.J)
    if found.size == total:
        witnesses = {_decode(c, q.r, t): int(p) for c, p in zip(found.tolist(), first.tolist())}
        return IndependenceResult(True, witnesses, None, total)
    # found is sorted, so the least missing code is the first index where found[i] != i
    gaps = np.flatnonzero(found != np.arange(found.size))
    least = int(gaps[0]) if gaps.size else int(found.size)
    return IndependenceResult(False, None, _decode(least, q.r, t), int(found.size))


@dataclass(frozen=True)
class ProbeReport:
    found: Optional[tuple]
    examined: int
    candidates: int  # size of the candidate space
    exhausted: bool  # every candidate was examined

    @property
    def complete(self):
        return self.found is not None or self.exhausted


def _candidates(g, m, limit):
    """Sets {j_1 < ... < j_m} with j_1 < g and gaps in [1, g], lexicographic."""
    for first in range(g):
        for gaps in cartesian(range(1, g + 1), repeat=m - 1):
            J = [first]
            for d in gaps:
                J.append(J[-1] + d)
            if J[-1] <= limit:
                yield tuple(J)


def syndetic_independence_probe(x, blocks, g, m, budget=None) -> ProbeReport:
    """Look for an independence set of size m with gaps <= g (a finite stand-in for
    a syndetic one).  ``budget`` caps the number of candidates examined."""
    x = as_prefix(x)
    if g < 1 or m < 1:
        raise ValueError("g and m must be >= 1")
    blocks = tuple(as_word(b) for b in blocks)
    limit = x.horizon - blocks[0].size
    cands = list(_candidates(g, m, limit))
    cap = enumeration_budget(budget)
    examined = 0
    for J in cands:
        if examined >= cap:
            return ProbeReport(None, examined, len(cands), False)
        examined += 1
        if check_independence(IndependenceQuery(x, blocks, J)).independent:
            return ProbeReport(J, examined, len(cands), False)
    return ProbeReport(None, examined, len(cands), True)
