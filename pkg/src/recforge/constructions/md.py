"""md-points inside a thick set, and the zero-entropy audit of their blocks.

Stage words, for a thick indicator C with C(0) = 1:

    A_1     = 1 0^{a_1} 1
    A_{k+1} = A_k 0^{a_{k+1}} A_k A_{k-1}^{m_k/m_{k-1}} ... A_1^{m_k/m_1}

with m_j = |A_j|.  The tail after 0^{a_{k+1}} (length k * m_k) must sit in a
single run of C, which fixes where it starts, s = m_k + a_{k+1}.  We take the
least a_{k+1} > a_k divisible by m_k for which that works, so every m_j
divides m_{k+1} and every 1 of the stage word lands in C.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import PreconditionError
from ..families import run_lengths_from
from ..subshift import block_count
from ..words import PointPrefix, as_prefix


@dataclass(frozen=True)
class MdStage:
    k: int
    word: np.ndarray  # A_k
    a: int
    tail_start: int  # where the copy of the tail (or the closing 1 of A_1) sits
    tail_length: int
    run_start: int  # the run of C that contains it
    run_length: int

    @property
    def m(self):
        return int(self.word.shape[0])


@dataclass
class MdTrace:
    horizon: int
    requested: int
    stages: list = field(default_factory=list)
    reason: Optional[str] = None

    @property
    def completed(self):
        return len(self.stages)

    @property
    def complete(self):
        return self.completed >= self.requested

    def stage(self, k) -> MdStage:
        return self.stages[k - 1]


def _run_containing(x, runlen, pos):
    start = pos
    while start > 0 and x[start - 1]:
        start -= 1
    return start, int(runlen[start])


def md_point(C, stages, extend=True):
    """Build y = A_J for the deepest feasible stage J.

    With ``extend`` the construction continues past ``stages`` while the
    window allows; the trace says how far it got and why it stopped.
    """
    C = as_prefix(C)
    x = C.word
    H = x.shape[0]
    if stages < 1:
        raise ValueError("stages must be >= 1")
    if not x[0]:
        raise PreconditionError("C must contain 0")
    runlen = run_lengths_from(x.astype(bool))
    trace = MdTrace(horizon=H, requested=int(stages))

    later = np.flatnonzero(x[2:])
    if later.size == 0:
        trace.reason = "stage 1: C has no element >= 2, so no a_1 >= 1 with a_1 + 1 in C"
        return PointPrefix(np.ones(1, dtype=np.uint8), "md:A_0"), trace
    a = int(later[0]) + 1
    word = np.zeros(a + 2, dtype=np.uint8)
    word[0] = word[-1] = 1
    rs, rl = _run_containing(x, runlen, a + 1)
    trace.stages.append(MdStage(1, word, a, a + 1, 1, rs, rl))

    while extend or trace.completed < stages:
        k = trace.completed
        cur = trace.stages[-1]
        m = cur.m
        tail = np.concatenate([cur.word] + [
            np.tile(trace.stages[j].word, m // trace.stages[j].m) for j in range(k - 2, -1, -1)])
        T = tail.shape[0]
        first = m + (cur.a // m + 1) * m
        cand = np.arange(first, H - T + 1, m)
        ok = cand[runlen[cand] >= T] if cand.size else cand
        if ok.size == 0:
            trace.reason = (
                f"stage {k + 1}: no run of C of length >= {T} starting at a position "
                f"s >= {first} with s divisible by m_{k} = {m} inside the window of length {H}")
            break
        s = int(ok[0])
        a = s - m
        word = np.concatenate([cur.word, np.zeros(a, dtype=np.uint8), tail])
        rs, rl = _run_containing(x, runlen, s)
        trace.stages.append(MdStage(k + 1, word, a, s, T, rs, rl))

    if not trace.complete and trace.reason is None:
        trace.reason = "stopped before the requested depth"
    y = trace.stages[-1].word
    return PointPrefix(y.copy(), f"md:A_{trace.completed}"), trace


@dataclass(frozen=True)
class EntropyRow:
    k: int
    m: int
    blocks: int
    bound: int  # (m + 1)^3
    fine_bound: int  # (m + 1)(k + 1)k

    @property
    def ok(self):
        return self.blocks <= self.bound


def entropy_bound_check(y, trace: MdTrace, stages):
    """Count B_{m_k}(y) for k <= stages and compare with (m_k + 1)^3."""
    y = as_prefix(y)
    if stages < 1 or stages > trace.completed:
        raise ValueError(f"stages must be in [1, {trace.completed}]")
    mK = trace.stage(stages).m
    if 4 * mK > y.horizon:
        raise PreconditionError(f"m_{stages} = {mK} exceeds a quarter of the window {y.horizon}")
    rows = []
    for k in range(1, stages + 1):
        m = trace.stage(k).m
        rows.append(EntropyRow(k, m, block_count(y, m), (m + 1) ** 3, (m + 1) * (k + 1) * k))
    return rows
