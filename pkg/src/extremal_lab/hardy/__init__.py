"""Critical points of rational approximation in the Hardy space of the exterior disk."""

from .certificate import interpolation_certificate
from .objective import (
    Projection,
    basis_length,
    concentrated_objective,
    denominator_from_parameters,
    parameters_from_denominator,
    project,
    takenaka_malmquist,
)
from .optimizer import CriticalPointSearch, find_critical

__all__ = [
    "CriticalPointSearch",
    "Projection",
    "basis_length",
    "concentrated_objective",
    "denominator_from_parameters",
    "find_critical",
    "interpolation_certificate",
    "parameters_from_denominator",
    "project",
    "takenaka_malmquist",
]
