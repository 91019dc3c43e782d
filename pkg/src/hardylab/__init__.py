"""Deterministic verification toolkit for hidden-variables vs quantum
conditional-measurement statistics."""

from . import bellhv, gedanken, hardy4, hvlogic, qcore
from .errors import (
    DimensionMismatchError,
    HardyLabError,
    InternalConsistencyError,
    InvalidParameterError,
    ZeroProbabilityError,
)
from .qcore import DisturbanceMetrics, Projector, StateVector

__all__ = [
    "bellhv", "gedanken", "hardy4", "hvlogic", "qcore",
    "StateVector", "Projector", "DisturbanceMetrics",
    "HardyLabError", "DimensionMismatchError", "ZeroProbabilityError",
    "InvalidParameterError", "InternalConsistencyError",
]

__version__ = "0.1.0"
