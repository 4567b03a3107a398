"""Finite-window recurrence families, subshift certificates and the
constructions built on them (md-points, sm-points, IP sets)."""

from .errors import BudgetExceeded, ConstructionError, PreconditionError, RecforgeError
from .windowset import WindowSet
from .words import PointPrefix

__version__ = "0.1.0"

__all__ = ["WindowSet", "PointPrefix", "RecforgeError", "PreconditionError",
           "ConstructionError", "BudgetExceeded"]
