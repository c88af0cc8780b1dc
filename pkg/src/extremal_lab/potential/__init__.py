"""Potential theory toolkit: kernels, equilibrium problems, balayage and Fekete points."""

from .balayage import (
    balayage_onto_contour,
    balayage_to_circle,
    circle_grid,
    reflect_measure,
    reflection_balayage_gap,
)
from .equilibrium import (
    contour_log_potential,
    green_equilibrium,
    green_gradient,
    green_kernel_matrix,
    green_potential,
    weighted_equilibrium,
)
from .fekete import fekete_points
from .kernels import (
    field_potential,
    green_disk,
    green_exterior_disk,
    log_potential,
    panel_cauchy_matrix,
    panel_log_matrix,
    spherical_potential,
)

__all__ = [
    "balayage_onto_contour",
    "balayage_to_circle",
    "circle_grid",
    "contour_log_potential",
    "fekete_points",
    "field_potential",
    "green_disk",
    "green_equilibrium",
    "green_exterior_disk",
    "green_gradient",
    "green_kernel_matrix",
    "green_potential",
    "log_potential",
    "panel_cauchy_matrix",
    "panel_log_matrix",
    "reflect_measure",
    "reflection_balayage_gap",
    "spherical_potential",
    "weighted_equilibrium",
]
