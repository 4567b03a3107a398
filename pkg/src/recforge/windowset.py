import numpy as np


class WindowSet:
    """A finite subset of [0, horizon), standing in for a subset of Z+ cut at the horizon.

    Elements are kept as a sorted, duplicate-free int64 array.  Instances are
    treated as immutable; the array is flagged read-only.
    """

    __slots__ = ("horizon", "elements")

    def __init__(self, horizon, elements=()):
        horizon = int(horizon)
        if horizon < 1:
            raise ValueError(f"horizon must be positive, got {horizon}")
        if isinstance(elements, (set, frozenset)):
            elements = sorted(elements)
        e = np.unique(np.asarray(elements, dtype=np.int64).ravel())
        if e.size and (e[0] < 0 or e[-1] >= horizon):
            raise ValueError(f"elements must lie in [0, {horizon})")
        e.flags.writeable = False
        self.horizon = horizon
        self.elements = e

    @classmethod
    def from_mask(cls, mask):
        mask = np.asarray(mask, dtype=bool)
        return cls(max(mask.shape[0], 1), np.flatnonzero(mask))

    @classmethod
    def full(cls, horizon):
        return cls(horizon, np.arange(horizon))

    def mask(self):
        m = np.zeros(self.horizon, dtype=bool)
        m[self.elements] = True
        return m

    def complement(self):
        return WindowSet.from_mask(~self.mask()) if self.horizon else self

    def with_horizon(self, horizon):
        """Same elements viewed in another window; elements past it are dropped."""
        e = self.elements
        return WindowSet(horizon, e[e < horizon])

    def restrict(self, a, b):
        """Elements in [a, b), re-based so that ``a`` maps to 0."""
        e = self.elements
        return WindowSet(b - a, e[(e >= a) & (e < b)] - a)

    def intersection(self, other):
        h = min(self.horizon, other.horizon)
        return WindowSet(h, np.intersect1d(self.elements, other.elements))

    def union(self, other):
        return WindowSet(max(self.horizon, other.horizon),
                         np.union1d(self.elements, other.elements))

    def issubset(self, other):
        return bool(np.isin(self.elements, other.elements, assume_unique=True).all())

    def contains_all(self, values):
        return bool(np.isin(np.asarray(values, dtype=np.int64), self.elements).all())

    def __contains__(self, n):
        i = np.searchsorted(self.elements, n)
        return bool(i < len(self.elements) and self.elements[i] == n)

    def __len__(self):
        return int(self.elements.shape[0])

    def __iter__(self):
        return iter(self.elements.tolist())

    def tolist(self):
        return self.elements.tolist()

    def __eq__(self, other):
        if not isinstance(other, WindowSet):
            return NotImplemented
        return self.horizon == other.horizon and np.array_equal(self.elements, other.elements)

    __hash__ = None

    def __repr__(self):
        shown = self.elements[:8].tolist()
        more = ", ..." if len(self) > 8 else ""
        return f"WindowSet(horizon={self.horizon}, {shown}{more} |{len(self)}|)"
