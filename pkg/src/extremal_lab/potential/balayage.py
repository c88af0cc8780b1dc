"""Balayage onto the unit circle and onto discretized contours."""

import logging

import numpy as np

from ..config import Config
from ..exceptions import PreconditionError
from ..models import CapacityResult, Contour, DiscreteMeasure
from .equilibrium import _active_set_solve, green_equilibrium
from .kernels import log_potential, panel_log_matrix

logger = logging.getLogger(__name__)


def circle_grid(size: int = Config.BALAYAGE_GRID) -> np.ndarray:
    """Uniform grid of the unit circle starting at 1."""
    return np.exp(2j * np.pi * np.arange(size) / size)


def balayage_to_circle(mu: DiscreteMeasure, grid: int = Config.BALAYAGE_GRID) -> DiscreteMeasure:
    """
    Sweep a measure of the open disk onto the unit circle.

    Every mass is replaced by its Poisson kernel density sampled on a uniform
    grid; masses closer to the circle than ``Config.CIRCLE_SNAP_TOL`` are
    already on it and go to the two neighbouring grid points.

    Args:
        mu: Measure supported in the open unit disk
        grid: Number of circle points

    Returns:
        DiscreteMeasure: Measure on the grid with the mass of ``mu``

    Raises:
        PreconditionError: If a mass sits on or outside the unit circle
    """
    if grid < 8:
        raise PreconditionError(f"Balayage grid needs at least 8 points, got {grid}")
    radii = np.abs(mu.points)
    if np.any(radii >= 1):
        raise PreconditionError("Balayage onto T needs support in the open unit disk")

    nodes = circle_grid(grid)
    weights = np.zeros(grid)
    near = 1 - radii < Config.CIRCLE_SNAP_TOL

    for point, mass in zip(mu.points[near], mu.weights[near]):
        position = (np.angle(point) % (2 * np.pi)) * grid / (2 * np.pi)
        k = int(np.floor(position)) % grid
        frac = position - np.floor(position)
        weights[k] += mass * (1 - frac)
        weights[(k + 1) % grid] += mass * frac

    inner = ~near
    if np.any(inner):
        u = mu.points[inner][None, :]
        poisson = (1 - np.abs(u) ** 2) / np.abs(nodes[:, None] - u) ** 2
        # column sums are 1 up to |u|**grid; normalize so mass is exact
        poisson /= np.sum(poisson, axis=0, keepdims=True)
        weights += poisson @ mu.weights[inner]

    logger.debug("Swept %d masses onto a %d point circle grid", mu.points.size, grid)
    return DiscreteMeasure(nodes, weights)


def reflect_measure(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Image of a measure under z -> 1/conj(z)."""
    if np.any(mu.points == 0):
        raise PreconditionError("Cannot reflect a mass sitting at the origin")
    return DiscreteMeasure(1.0 / np.conj(mu.points), mu.weights.copy())


def balayage_onto_contour(nu: DiscreteMeasure, contour: Contour) -> DiscreteMeasure:
    """
    Balayage of a measure off the contour onto the contour.

    Finds the measure on the panels whose logarithmic potential equals the
    potential of ``nu`` plus a constant on the contour, with the same mass.
    """
    mass = nu.mass
    if mass <= 0:
        raise PreconditionError("Balayage needs a measure of positive mass")
    x = contour.nodes
    target = np.asarray(log_potential(nu, x), dtype=float)
    if not np.all(np.isfinite(target)):
        raise PreconditionError("nu must not charge the contour nodes")
    matrix = -panel_log_matrix(x, contour)
    weights, _, _ = _active_set_solve(matrix, target / mass, "balayage_onto_contour")
    return DiscreteMeasure(x, weights * mass)


def reflection_balayage_gap(source: CapacityResult, target: Contour) -> float:
    """
    Kolmogorov distance between two routes to the Green equilibrium of a plate.

    The equilibrium of ``source`` is reflected across the unit circle and swept
    onto ``target``, a separate discretization of the same single-arc plate.
    The result is compared with the Green equilibrium solved on ``target``.
    """
    if np.unique(target.arc_index).size != 1:
        raise PreconditionError("The reflection check needs a single-arc plate")
    swept = balayage_onto_contour(reflect_measure(source.equilibrium), target)
    direct = green_equilibrium(target, compute_residual=False).equilibrium
    gap = np.cumsum(swept.weights) / swept.mass - np.cumsum(direct.weights) / direct.mass
    return float(np.max(np.abs(gap)))
