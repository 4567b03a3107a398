"""sm-points inside a thickly syndetic set.

Stage m keeps a word A_m (a prefix of the point), B_m = A_m A_m 0 A_m and
b_m = 3 a_m + 1.  The windows W_m are starts of runs of F of length r_m,
chosen greedily from 2 a_m on with spacing at least 2 r_m.  At stage 1 a
copy of B_1 goes at every window start.  At stage m + 1 each window is
rewritten between the end of its first B_m and the start of its last B_m:
first B_{m+1}, then as many B_m, B_{m-1}, ..., B_1 as fit (greedy,
longest first), then zeros.  A_{m+1} is the current word up to the end of
the first B_m.  Every 1 written sits inside a window, hence inside F.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import PreconditionError
from ..families import run_lengths_from
from ..windowset import WindowSet
from ..words import PointPrefix, as_prefix


@dataclass(frozen=True)
class SmStage:
    m: int
    A: np.ndarray
    B: np.ndarray
    r: int
    l: int
    windows: WindowSet  # W_m
    u: WindowSet  # starts of the B_m copies placed at this stage
    regions: tuple = ()  # (start, end) rewritten per window, stages >= 2
    placements: tuple = ()  # (position, level) of every block written

    @property
    def a(self):
        return int(self.A.shape[0])

    @property
    def b(self):
        return int(self.B.shape[0])


@dataclass
class SmTrace:
    horizon: int
    requested: int
    stages: list = field(default_factory=list)
    length: int = 0  # |y|
    reason: Optional[str] = None

    @property
    def completed(self):
        return len(self.stages)

    @property
    def complete(self):
        return self.completed >= self.requested

    def stage(self, m) -> SmStage:
        return self.stages[m - 1]


def _pick_windows(starts, first, spacing, usable):
    picked = []
    lo = first
    while True:
        i = int(np.searchsorted(starts, lo))
        while i < starts.size and not usable(int(starts[i])):
            i += 1
        if i == starts.size:
            return picked
        w = int(starts[i])
        picked.append(w)
        lo = w + spacing


def sm_point(F, stages):
    F = as_prefix(F)
    x = F.word.astype(bool)
    H = x.shape[0]
    if stages < 1:
        raise ValueError("stages must be >= 1")
    if not x[0]:
        raise PreconditionError("F must contain 0")
    runlen = run_lengths_from(x)
    trace = SmTrace(horizon=H, requested=int(stages))
    y = np.zeros(H, dtype=np.uint8)
    a = int(np.flatnonzero(x)[0]) + 1  # min F + 1
    y[:a] = x[:a]
    blocks = {}  # level -> B word
    prev = None

    for m in range(1, stages + 1):
        if prev is not None:
            a = int(prev.u.elements[0]) + prev.b
        A = y[:a].copy()
        B = np.concatenate([A, A, [0], A]).astype(np.uint8)
        b = B.shape[0]
        r = b if prev is None else 2 * prev.l + 2 * prev.b + b
        starts = np.flatnonzero(runlen >= r)

        if prev is None:
            def usable(w):
                return True
        else:
            u_prev = prev.u.elements
            bp = prev.b

            def usable(w):
                k = int(np.searchsorted(u_prev, w))
                j = int(np.searchsorted(u_prev, w + r - bp, side="right")) - 1
                return j > k and u_prev[j] - (u_prev[k] + bp) >= b

        W = _pick_windows(starts, 2 * a, 2 * r, usable)
        if len(W) < 2:
            trace.reason = (f"stage {m}: fewer than two runs of F of length >= {r} "
                            f"(spaced >= {2 * r} apart, from {2 * a} on) fit in the window of length {H}")
            break

        blocks[m] = B
        placements = []
        regions = []
        if prev is None:
            u = W
            for w in W:
                y[w:w + b] = B
                placements.append((w, 1))
            l = max([W[0]] + np.diff(W).tolist())
        else:
            u = []
            for w in W:
                k = int(np.searchsorted(u_prev, w))
                j = int(np.searchsorted(u_prev, w + r - bp, side="right")) - 1
                start, end = int(u_prev[k]) + bp, int(u_prev[j])
                regions.append((start, end))
                y[start:end] = 0
                y[start:start + b] = B
                placements.append((start, m))
                u.append(start)
                pos = start + b
                for level in range(m - 1, 0, -1):
                    Bl = blocks[level]
                    n = Bl.shape[0]
                    for _ in range((end - pos) // n):
                        y[pos:pos + n] = Bl
                        placements.append((pos, level))
                        pos += n
            l = max([W[0]] + np.diff(W).tolist()) + prev.l + prev.b
        stage = SmStage(m, A, B, r, int(l), WindowSet(H, W), WindowSet(H, u),
                        tuple(regions), tuple(placements))
        trace.stages.append(stage)
        prev = stage

    if prev is None:
        trace.length = a
    else:
        trace.length = int(prev.u.elements[-1]) + prev.b
    out = y[:trace.length].copy()
    return PointPrefix(out, f"sm:y^{trace.completed}"), trace
