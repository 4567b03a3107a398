"""Return times in products, and finite versions of three counterexamples:
a point whose product with an md-point never returns, the same with an
sm-point, and two thick sets whose rapid IP sets have disjoint return times.
"""

from dataclasses import dataclass
import numpy as np

from .constructions import in_runs, md_point, rapid_ip, runs_of, sm_point
from .errors import ConstructionError, PreconditionError
from .families import fs_sums, syndetic_gap, thickly_syndetic_profile
from .subshift import occurrences
from .windowset import WindowSet
from .words import PointPrefix, as_prefix, as_word, word_str


@dataclass(frozen=True)
class ProductScenario:
    x: PointPrefix
    A: np.ndarray
    y: PointPrefix
    B: np.ndarray

    def __init__(self, x, A, y, B):
        x, y = as_prefix(x), as_prefix(y)
        A, B = as_word(A), as_word(B)
        if A.size > x.horizon or B.size > y.horizon:
            raise ValueError("block longer than its point prefix")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "B", B)

    @property
    def horizon(self):
        return min(self.x.horizon - self.A.size + 1, self.y.horizon - self.B.size + 1)


def joint_return_times(s: ProductScenario) -> WindowSet:
    """N((x, y), [A] x [B]) = N(x, [A]) and N(y, [B]) intersected on the common horizon."""
    h = s.horizon
    a = occurrences(s.x, s.A).elements
    b = occurrences(s.y, s.B).elements
    return WindowSet(h, np.intersect1d(a[a < h], b[b < h]))


def _adjoin_zero_complement(occ: WindowSet, label):
    mask = ~occ.mask()
    mask[0] = True
    return PointPrefix(mask.astype(np.uint8), label)


@dataclass
class CounterexampleReport:
    kind: str
    x: PointPrefix
    A: str
    support: PointPrefix  # C or F, complement of N(x, [A]) with 0 adjoined
    y: PointPrefix
    trace: object
    B: str
    joint: WindowSet
    subset_ok: bool  # every 1 of y lies in the support
    joint_ok: bool  # joint return set inside {0}
    precondition: str

    @property
    def ok(self):
        return self.subset_ok and self.joint_ok


def _finish(kind, x, A, support, y, trace, precondition):
    ones = occurrences(y, "1").elements
    subset_ok = bool(support.word[ones].all()) if ones.size else True
    joint = joint_return_times(ProductScenario(x, A, y, "1"))
    joint_ok = bool(np.all(joint.elements == 0))
    return CounterexampleReport(kind, x, word_str(A), support, y, trace, "1", joint,
                                subset_ok, joint_ok, precondition)


def fps_counterexample(x, A="1", stages=3) -> CounterexampleReport:
    """N(x, [A]) not syndetic: an md-point y inside C = {0} + complement makes
    (x, y) never return to [A] x [1] except at time 0."""
    x = as_prefix(x)
    A = as_word(A)
    occ = occurrences(x, A)
    g = syndetic_gap(occ)
    if g is not None:
        raise PreconditionError(
            f"N(x, [{word_str(A)}]) is {g}-syndetic on the window of length {occ.horizon}; "
            "the demo needs a set that is not syndetic")
    C = _adjoin_zero_complement(occ, "C")
    y, trace = md_point(C, stages)
    return _finish("fps", x, A, C, y, trace,
                   f"N(x, [{word_str(A)}]) has no syndetic gap on the window of length {occ.horizon}")


def fs_counterexample(x, A="1", stages=3, run_bound=64) -> CounterexampleReport:
    """N(x, [A]) not piecewise syndetic: an sm-point y inside F = {0} + complement
    makes (x, y) never return to [A] x [1] except at time 0.

    Not being piecewise syndetic is checked through its dual: for every
    n <= ``run_bound`` the starts of length-n runs of F are syndetic on the window.
    """
    x = as_prefix(x)
    A = as_word(A)
    occ = occurrences(x, A)
    F = _adjoin_zero_complement(occ, "F")
    prof = thickly_syndetic_profile(WindowSet.from_mask(F.word.astype(bool)), run_bound)
    if prof is None:
        raise PreconditionError(
            f"the complement of N(x, [{word_str(A)}]) is not thickly syndetic on the window "
            f"of length {occ.horizon} (runs up to length {run_bound}); the demo needs "
            "a set that is not piecewise syndetic")
    y, trace = sm_point(F, stages)
    worst = max(g for _, g in prof.entries)
    return _finish("fs", x, A, F, y, trace,
                   f"starts of runs of length <= {run_bound} in F are {worst}-syndetic "
                   f"on the window of length {occ.horizon}")


@dataclass
class DesertReport:
    gens: tuple  # (FSGenerators for F1, FSGenerators for F2)
    fs: tuple  # the two FS sets, sorted arrays
    returns: tuple  # positive return times of [1] to itself in each indicator
    in_f1: bool
    in_f2: bool
    disjoint: bool
    intersection: np.ndarray

    @property
    def ok(self):
        return self.in_f1 and self.in_f2 and self.disjoint and self.intersection.size == 0


def positive_returns(elements) -> np.ndarray:
    """Positive differences of a small sorted set: the return times n >= 1 of [1]
    to itself in its indicator."""
    e = np.asarray(elements, dtype=np.int64)
    d = e[None, :] - e[:, None]
    return np.unique(d[d > 0])


def _runs_overlap(r1, r2):
    i = j = 0
    while i < len(r1) and j < len(r2):
        (s1, n1), (s2, n2) = r1[i], r2[j]
        if s1 < s2 + n2 and s2 < s1 + n1:
            return (max(s1, s2), min(s1 + n1, s2 + n2))
        if s1 + n1 <= s2 + n2:
            i += 1
        else:
            j += 1
    return None


def recurrence_desert(F1, F2, depth) -> DesertReport:
    """Rapid IP sets A_i inside disjoint thick F_i: the differences of A_i stay in
    F_i, so the indicators of A_1 and A_2 share no positive return time."""
    r1, r2 = runs_of(F1), runs_of(F2)
    both = _runs_overlap(r1, r2)
    if both is not None:
        raise PreconditionError(f"F1 and F2 overlap on [{both[0]}, {both[1]})")
    gens = []
    for name, runs in (("F1", r1), ("F2", r2)):
        try:
            gens.append(rapid_ip(runs, depth))
        except ConstructionError as err:
            raise PreconditionError(f"{name} is too thin for depth {depth}: {err}") from err
    fs = tuple(fs_sums(g.gens) for g in gens)
    returns = tuple(positive_returns(e) for e in fs)
    in1 = bool(in_runs(r1, returns[0]).all() and in_runs(r1, fs[0]).all())
    in2 = bool(in_runs(r2, returns[1]).all() and in_runs(r2, fs[1]).all())
    inter = np.intersect1d(returns[0], returns[1])
    return DesertReport(tuple(gens), fs, returns, in1, in2, True, inter)
