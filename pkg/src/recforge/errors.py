import os


class RecforgeError(Exception):
    pass


class PreconditionError(RecforgeError, ValueError):
    """Input does not satisfy what the operation (or demo) requires."""


class ConstructionError(RecforgeError):
    """A construction could not complete a required stage inside the window."""

    def __init__(self, message, stage=None, partial=None):
        super().__init__(message)
        self.stage = stage
        self.partial = partial  # deepest result reached, when there is one


class BudgetExceeded(RecforgeError):
    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


DEFAULT_BUDGET = 1 << 22


def enumeration_budget(requested=None):
    """Effective enumeration cap: the smaller of ``requested`` and RECFORGE_BUDGET."""
    cap = DEFAULT_BUDGET if requested is None else int(requested)
    env = os.environ.get("RECFORGE_BUDGET")
    if env:
        cap = min(cap, int(env))
    return cap
