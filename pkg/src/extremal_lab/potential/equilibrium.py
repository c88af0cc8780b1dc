"""Green and weighted equilibrium problems on polyline contours.

Densities are piecewise constant on panels and collocated at panel midpoints;
the logarithmic part of every kernel is integrated exactly over each panel.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
from scipy import linalg

from ..config import Config
from ..exceptions import NumericalError, PreconditionError, SingularSystemError
from ..models import CapacityResult, Contour, DiscreteMeasure
from .kernels import field_potential, panel_cauchy_matrix, panel_log_matrix

logger = logging.getLogger(__name__)


def _check_plate(contour: Contour, exterior_radius: Optional[float]) -> None:
    if contour.panel_count < 2:
        raise PreconditionError("A plate needs at least 2 panels")
    radii = np.abs(np.concatenate([contour.starts, contour.ends]))
    if exterior_radius is None:
        if np.any(radii >= 1):
            raise PreconditionError("Plate must lie in the open unit disk")
    elif np.any(radii <= exterior_radius):
        raise PreconditionError(f"Plate must lie outside the circle of radius {exterior_radius}")


def _smooth_part(x: np.ndarray, u: np.ndarray, exterior_radius: Optional[float]) -> np.ndarray:
    if exterior_radius is None:
        return np.log(np.abs(1 - x * np.conj(u)))
    r2 = exterior_radius**2
    return np.log(np.abs(x * np.conj(u) - r2)) - np.log(exterior_radius)


def green_kernel_matrix(
    contour: Contour,
    targets: Optional[np.ndarray] = None,
    exterior_radius: Optional[float] = None,
) -> np.ndarray:
    """Panel-averaged Green function: entry (i, j) for target i and panel j."""
    x = contour.nodes if targets is None else np.asarray(targets, dtype=complex).ravel()
    smooth = _smooth_part(x[:, None], contour.nodes[None, :], exterior_radius)
    return smooth - panel_log_matrix(x, contour)


def _solve_with_mass(
    matrix: np.ndarray, rhs: np.ndarray, active: np.ndarray
) -> Tuple[np.ndarray, float]:
    idx = np.flatnonzero(active)
    k = idx.size
    system = np.zeros((k + 1, k + 1))
    system[:k, :k] = matrix[np.ix_(idx, idx)]
    system[:k, k] = -1.0
    system[k, :k] = 1.0
    b = np.concatenate([rhs[idx], [1.0]])
    try:
        solution = linalg.solve(system, b)
    except (linalg.LinAlgError, ValueError) as e:
        raise SingularSystemError(f"Equilibrium system is singular: {e}") from e
    if not np.all(np.isfinite(solution)):
        raise SingularSystemError("Equilibrium system produced non-finite weights")
    weights = np.zeros(matrix.shape[1])
    weights[idx] = solution[:k]
    return weights, float(solution[k])


def _active_set_solve(
    matrix: np.ndarray, rhs: np.ndarray, label: str
) -> Tuple[np.ndarray, float, int]:
    """Solve matrix @ w - c = rhs, sum w = 1, w >= 0 by pruning negative weights."""
    active = np.ones(matrix.shape[1], dtype=bool)
    pruned = 0
    for _ in range(Config.MAX_ACTIVE_SET_ITERATIONS):
        weights, constant = _solve_with_mass(matrix, rhs, active)
        negative = active & (weights < -Config.NEGATIVE_WEIGHT_TOL)
        if not np.any(negative):
            weights = np.where(weights < 0, 0.0, weights)
            return weights / np.sum(weights), constant, pruned
        count = int(np.count_nonzero(negative))
        logger.warning(
            "Irregular discretization in %s: pruning %d negative weights", label, count
        )
        active &= ~negative
        pruned += count
        if not np.any(active):
            raise SingularSystemError(f"Every weight was pruned in {label}")
    raise SingularSystemError(f"Active-set iteration did not settle in {label}")


def _quarter_points(contour: Contour, weights: np.ndarray) -> np.ndarray:
    on = weights > 0
    s, e = contour.starts[on], contour.ends[on]
    return np.concatenate([s + 0.25 * (e - s), s + 0.75 * (e - s)])


def green_equilibrium(
    contour: Contour,
    exterior_radius: Optional[float] = None,
    compute_residual: bool = True,
) -> CapacityResult:
    """
    Green equilibrium distribution and condenser capacity of a plate.

    The plate is condensed against the unit circle, or against the circle of
    ``exterior_radius`` when the domain is the exterior of that circle.

    Args:
        contour: Discretized plate
        exterior_radius: Use the domain {|z| > exterior_radius} instead of the disk
        compute_residual: Measure the off-node deviation from the Robin constant

    Returns:
        CapacityResult: cap = 1/V with V the constant Green potential on the plate

    Raises:
        PreconditionError: If the plate leaves the domain or has too few panels
        SingularSystemError: If the discretized system is singular
    """
    _check_plate(contour, exterior_radius)
    matrix = green_kernel_matrix(contour, exterior_radius=exterior_radius)
    weights, robin, pruned = _active_set_solve(matrix, np.zeros(contour.panel_count), "green_equilibrium")
    if robin <= 0:
        raise NumericalError(f"Non-positive Green energy {robin:.3e}")

    residual = 0.0
    if compute_residual:
        probes = _quarter_points(contour, weights)
        values = green_kernel_matrix(contour, probes, exterior_radius) @ weights
        residual = float(np.max(np.abs(values - robin)))

    return CapacityResult(
        capacity=1.0 / robin,
        equilibrium=DiscreteMeasure(contour.nodes, weights),
        robin_constant=robin,
        residual=residual,
        contour=contour,
        pruned=pruned,
    )


def weighted_equilibrium(
    contour: Contour, nu: DiscreteMeasure, compute_residual: bool = True
) -> CapacityResult:
    """
    Logarithmic equilibrium in the external field -U^nu and the nu-capacity.

    Minimizes I[w] - 2 * int U^nu dw over probability measures on the contour.

    Args:
        contour: Discretized compact set
        nu: Measure in the closed unit disk
        compute_residual: Measure the off-node deviation of the weighted potential

    Returns:
        CapacityResult: capacity = exp(-I_nu), robin_constant = modified Robin constant
    """
    if contour.panel_count < 2:
        raise PreconditionError("A plate needs at least 2 panels")
    if nu.points.size and np.any(np.abs(nu.points) > 1 + 1e-12):
        raise PreconditionError("nu must be supported in the closed unit disk")

    x = contour.nodes
    field = np.asarray(field_potential(nu, x), dtype=float)
    matrix = -panel_log_matrix(x, contour)
    weights, robin, pruned = _active_set_solve(matrix, field, "weighted_equilibrium")
    energy = robin - float(field @ weights)

    residual = 0.0
    if compute_residual:
        probes = _quarter_points(contour, weights)
        values = -panel_log_matrix(probes, contour) @ weights
        residual = float(np.max(np.abs(values - field_potential(nu, probes) - robin)))

    return CapacityResult(
        capacity=float(np.exp(-energy)),
        equilibrium=DiscreteMeasure(x, weights),
        robin_constant=robin,
        residual=residual,
        contour=contour,
        pruned=pruned,
        field_values=field,
    )


def _flat(z: Union[complex, np.ndarray]) -> Tuple[np.ndarray, tuple]:
    arr = np.asarray(z, dtype=complex)
    return arr.ravel(), arr.shape


def green_potential(
    result: CapacityResult,
    z: Union[complex, np.ndarray],
    exterior_radius: Optional[float] = None,
) -> Union[float, np.ndarray]:
    """Green potential of an equilibrium measure carried by panels."""
    flat, shape = _flat(z)
    values = np.empty(flat.size)
    for lo in range(0, flat.size, 1024):
        chunk = flat[lo : lo + 1024]
        values[lo : lo + 1024] = (
            green_kernel_matrix(result.contour, chunk, exterior_radius)
            @ result.equilibrium.weights
        )
    return float(values[0]) if np.ndim(z) == 0 else values.reshape(shape)


def contour_log_potential(
    result: CapacityResult, z: Union[complex, np.ndarray]
) -> Union[float, np.ndarray]:
    """Logarithmic potential of a panel-carried measure."""
    flat, shape = _flat(z)
    values = -panel_log_matrix(flat, result.contour) @ result.equilibrium.weights
    return float(values[0]) if np.ndim(z) == 0 else values.reshape(shape)


def green_gradient(
    result: CapacityResult, z: Union[complex, np.ndarray]
) -> Union[complex, np.ndarray]:
    """Complex derivative d/dz of the Green potential (disk domain)."""
    flat, shape = _flat(z)
    u = result.contour.nodes[None, :]
    cauchy = panel_cauchy_matrix(flat, result.contour)
    smooth = np.conj(u) / (1 - flat[:, None] * np.conj(u))
    values = -0.5 * (cauchy + smooth) @ result.equilibrium.weights
    return complex(values[0]) if np.ndim(z) == 0 else values.reshape(shape)
