"""Constraint-based phonology coupled to a gestural articulator model.

Segment strings are turned into fully timed gestural scores by order-free
constraint solving, then into tract-variable trajectories by critically
damped oscillator dynamics.
"""

from gestphon.errors import (
    ConfigError,
    GestphonError,
    InconsistentError,
    UndeterminedTimingError,
    UnknownSegmentError,
    UnknownVariableError,
    UnsatisfiableError,
    UnsupportedConstructError,
    UnsyllabifiableError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "GestphonError",
    "InconsistentError",
    "UndeterminedTimingError",
    "UnknownSegmentError",
    "UnknownVariableError",
    "UnsatisfiableError",
    "UnsupportedConstructError",
    "UnsyllabifiableError",
]
