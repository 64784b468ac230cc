"""Relative-correctness analysis and mutation-based repair for a small
imperative language over finite state spaces.
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    EmptySuiteError,
    NonDeterministicError,
    ParseError,
    PatchError,
    RelcorError,
    SpaceMismatchError,
)
from .relations import (
    Relation,
    competence_domain,
    correctness_order,
    is_correct,
    more_correct,
    refines,
)
from .space import ArrayDomain, Interval, State, StateSpace

__all__ = [
    "ArrayDomain",
    "CapacityError",
    "EmptySuiteError",
    "Interval",
    "NonDeterministicError",
    "ParseError",
    "PatchError",
    "Relation",
    "RelcorError",
    "SpaceMismatchError",
    "State",
    "StateSpace",
    "competence_domain",
    "correctness_order",
    "is_correct",
    "more_correct",
    "refines",
    "__version__",
]
