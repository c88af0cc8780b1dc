"""Green functions, logarithmic potentials and exact panel integrals."""

from typing import Union

import numpy as np

from ..exceptions import GreenPoleError, PreconditionError
from ..models import Contour, DiscreteMeasure

Points = Union[complex, np.ndarray]


def _scalar_or_array(value: np.ndarray) -> Union[float, np.ndarray]:
    if np.ndim(value) == 0:
        return float(value)
    return value


def green_disk(z: Points, u: Points) -> Union[float, np.ndarray]:
    """
    Green function of the unit disk, log|1 - z conj(u)| - log|z - u|.

    Args:
        z: Evaluation point(s) in the closed disk
        u: Pole(s) in the closed disk

    Returns:
        float or np.ndarray: Nonnegative Green function values

    Raises:
        GreenPoleError: If z coincides with u
    """
    z_arr = np.asarray(z, dtype=complex)
    u_arr = np.asarray(u, dtype=complex)
    if np.any(np.abs(z_arr) > 1 + 1e-12) or np.any(np.abs(u_arr) > 1 + 1e-12):
        raise PreconditionError("Green function of the disk needs points in the closed disk")
    if np.any(z_arr == u_arr):
        raise GreenPoleError("z equals the pole of the Green function")
    value = np.log(np.abs(1 - z_arr * np.conj(u_arr))) - np.log(np.abs(z_arr - u_arr))
    return _scalar_or_array(value)


def green_exterior_disk(z: Points, u: Points, radius: float) -> Union[float, np.ndarray]:
    """Green function of {|z| > radius} with pole at u."""
    z_arr = np.asarray(z, dtype=complex)
    u_arr = np.asarray(u, dtype=complex)
    if np.any(z_arr == u_arr):
        raise GreenPoleError("z equals the pole of the Green function")
    value = (
        np.log(np.abs(z_arr * np.conj(u_arr) - radius**2))
        - np.log(radius)
        - np.log(np.abs(z_arr - u_arr))
    )
    return _scalar_or_array(value)


def _point_kernel_sum(measure: DiscreteMeasure, z: Points, kernel) -> Union[float, np.ndarray]:
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    flat = z_arr.ravel()
    out = np.empty(flat.size)
    for lo in range(0, flat.size, 512):
        chunk = flat[lo : lo + 512, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            values = kernel(chunk, measure.points[None, :])
        hit = np.isinf(values) & (measure.weights[None, :] != 0)
        values = np.where(np.isinf(values), 0.0, values)
        summed = values @ measure.weights if values.size else np.zeros(chunk.shape[0])
        summed = np.where(np.any(hit, axis=1), np.inf, summed)
        out[lo : lo + 512] = summed
    out = out.reshape(z_arr.shape)
    if np.ndim(z) == 0:
        return float(out[0])
    return out


def log_potential(measure: DiscreteMeasure, z: Points) -> Union[float, np.ndarray]:
    """V^mu(z) = -sum w_j log|z - p_j|, +inf at support points."""
    return _point_kernel_sum(measure, z, lambda x, p: -np.log(np.abs(x - p)))


def spherical_potential(measure: DiscreteMeasure, z: Points) -> Union[float, np.ndarray]:
    """Spherically normalized potential: kernel -log|1 - z/u| for |u| > 1."""

    def kernel(x: np.ndarray, p: np.ndarray) -> np.ndarray:
        inside = np.abs(p) <= 1
        safe = np.where(inside, 1.0, p)
        return np.where(inside, -np.log(np.abs(x - p)), -np.log(np.abs(1 - x / safe)))

    return _point_kernel_sum(measure, z, kernel)


def field_potential(measure: DiscreteMeasure, z: Points) -> Union[float, np.ndarray]:
    """U^nu(z) = -sum nu_j log|1 - z conj(u_j)|."""
    if measure.points.size == 0:
        return 0.0 if np.ndim(z) == 0 else np.zeros(np.shape(z))
    return _point_kernel_sum(
        measure, z, lambda x, p: -np.log(np.abs(1 - x * np.conj(p)))
    )


def panel_log_matrix(targets: np.ndarray, contour: Contour) -> np.ndarray:
    """
    Mean of log|x - t| over every panel, for every target x.

    Entry (i, j) is (1/L_j) * integral over panel j of log|x_i - t| |dt|, exact
    for straight panels. For a panel midpoint this is log(L/2) - 1.
    """
    x = np.asarray(targets, dtype=complex).ravel()[:, None]
    a = contour.starts[None, :]
    lengths = contour.arc_weights[None, :]
    direction = (contour.ends[None, :] - a) / lengths
    w = (x - a) / direction
    wl = w - lengths
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(w == 0, 0.0, w * np.log(w))
        tail = np.where(wl == 0, 0.0, wl * np.log(wl))
    return (np.real(head - tail) - lengths) / lengths


def panel_cauchy_matrix(targets: np.ndarray, contour: Contour) -> np.ndarray:
    """(1/L_j) * integral over panel j of |dt| / (x_i - t)."""
    x = np.asarray(targets, dtype=complex).ravel()[:, None]
    a = contour.starts[None, :]
    b = contour.ends[None, :]
    lengths = contour.arc_weights[None, :]
    direction = (b - a) / lengths
    return np.log((x - a) / (x - b)) / (direction * lengths)
