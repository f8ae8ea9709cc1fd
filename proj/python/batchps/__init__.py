"""Sojourn-time tails of the M^X/M/1 processor-sharing queue with geometric batches."""

from ._core import (
    InstabilityError,
    NumericalError,
    __version__,
    bromwich_ccdf,
    cut_info,
    lt_omega,
    simulate,
    stationary_occupancy,
    tail_constants,
    tail_omega,
    tail_Omega,
    validate,
)

__all__ = [
    "InstabilityError",
    "NumericalError",
    "__version__",
    "bromwich_ccdf",
    "cut_info",
    "lt_omega",
    "simulate",
    "stationary_occupancy",
    "tail_constants",
    "tail_omega",
    "tail_Omega",
    "validate",
]
