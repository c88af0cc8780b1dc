"""Squared-error functional with the numerator projected out.

For a fixed monic denominator q the best numerator is the orthogonal
projection of the tail onto {p/q : deg p < n}. The projection is computed in
the orthonormal Takenaka-Malmquist basis built from the roots of q, so the
residual stays accurate when poles crowd the unit circle.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Tuple

import numpy as np
import numpy.polynomial.polynomial as npoly
from scipy.signal import lfilter

from ..config import Config
from ..models import LaurentTail
from ..series import rational_tail, tail_numerator

logger = logging.getLogger(__name__)


@dataclass
class Projection:
    """Best approximant for a fixed denominator."""
    value: float
    numerator: np.ndarray
    denominator: np.ndarray
    residual: np.ndarray
    poles: np.ndarray


def basis_length(truncation: int, poles: np.ndarray) -> int:
    """Tail length at which every basis function has decayed below round-off."""
    radius = float(np.max(np.abs(poles))) if poles.size else 0.0
    if radius <= 0:
        return truncation + 1
    needed = int(np.ceil(np.log(1e-18) / np.log(radius))) + 1
    return int(min(max(truncation + 1, needed), Config.MAX_BASIS_LENGTH))


def takenaka_malmquist(poles: np.ndarray, length: int) -> np.ndarray:
    """
    Tails of the orthonormal basis phi_j = s_j / (z - xi_j) * prod_{i<j} (1 - conj(xi_i) z) / (z - xi_i).

    Row j holds the coefficients of z^-(k+1), k < length.
    """
    n = poles.size
    basis = np.empty((n, length), dtype=complex)
    k = np.arange(length)
    scale = np.sqrt(1 - np.abs(poles) ** 2)
    basis[0] = scale[0] * poles[0] ** k
    for j in range(1, n):
        # (1 - conj(xi) z) / (z - xi) = (w - conj(xi)) / (1 - xi w) in w = 1/z
        shifted = lfilter([-np.conj(poles[j - 1]), 1.0], [1.0, -poles[j]], basis[j - 1])
        basis[j] = shifted * scale[j] / scale[j - 1]
    return basis


def project(tail: LaurentTail, denominator: np.ndarray) -> Projection:
    """
    Orthogonal projection of a tail onto rational functions with a given denominator.

    Args:
        tail: Laurent tail of f
        denominator: Ascending coefficients of a monic q with roots in the open disk

    Returns:
        Projection: value ||f - p/q||**2 in coefficient norm, numerator and residual
    """
    q = np.asarray(denominator, dtype=complex)
    poles = npoly.polyroots(q).astype(complex) if q.size > 1 else np.zeros(0, dtype=complex)
    length = basis_length(tail.truncation_length, poles)
    f = tail.padded(length)
    basis = takenaka_malmquist(poles, length)
    coefficients = basis.conj() @ f
    approximant = coefficients @ basis
    residual = f - approximant
    numerator = tail_numerator(q, approximant)
    return Projection(
        value=float(np.vdot(residual, residual).real),
        numerator=numerator,
        denominator=q,
        residual=residual,
        poles=poles,
    )


def denominator_from_parameters(theta: np.ndarray, n: int, real: bool) -> np.ndarray:
    """Monic q from n real or 2n real parameters."""
    if real:
        low = theta[:n].astype(complex)
    else:
        low = theta[:n] + 1j * theta[n : 2 * n]
    return np.concatenate([low, [1.0 + 0j]])


def parameters_from_denominator(q: np.ndarray, real: bool) -> np.ndarray:
    n = q.size - 1
    if real:
        return np.real(q[:n]).copy()
    return np.concatenate([np.real(q[:n]), np.imag(q[:n])])


def _analytic_gradient(projection: Projection, real: bool) -> np.ndarray:
    q = projection.denominator
    n = q.size - 1
    length = projection.residual.size
    q2 = npoly.polymul(q, q)
    grad = np.empty(n if real else 2 * n)
    for i in range(n):
        shifted = np.concatenate([np.zeros(i), projection.numerator])
        direction = rational_tail(shifted, q2, length)
        inner = np.vdot(direction, projection.residual)
        grad[i] = 2.0 * inner.real
        if not real:
            grad[n + i] = 2.0 * inner.imag
    return grad


def concentrated_objective(
    tail: LaurentTail,
    q: np.ndarray,
    gradient: Literal["analytic", "finite_difference"] = "analytic",
    real: bool = False,
    max_pole_modulus: float = 1.0,
) -> Tuple[float, np.ndarray]:
    """
    Value and gradient of the projected squared error with respect to q.

    Args:
        tail: Laurent tail of f
        q: Ascending coefficients of a monic denominator
        gradient: Analytic variable-projection gradient or central differences
        real: Differentiate only the real parts of the coefficients
        max_pole_modulus: Barrier radius; roots at or beyond it give +inf

    Returns:
        Tuple[float, np.ndarray]: value >= 0 and the gradient in real parameters
    """
    q = np.asarray(q, dtype=complex)
    n = q.size - 1
    size = n if real else 2 * n
    poles = npoly.polyroots(q) if n else np.zeros(0)
    if poles.size and np.max(np.abs(poles)) >= max_pole_modulus:
        return float("inf"), np.full(size, np.nan)

    projection = project(tail, q)
    if gradient == "analytic":
        return projection.value, _analytic_gradient(projection, real)

    theta = parameters_from_denominator(q, real)
    grad = np.empty(size)
    for i in range(size):
        step = 1e-7 * max(1.0, abs(theta[i]))
        up, down = theta.copy(), theta.copy()
        up[i] += step
        down[i] -= step
        plus = project(tail, denominator_from_parameters(up, n, real)).value
        minus = project(tail, denominator_from_parameters(down, n, real)).value
        grad[i] = (plus - minus) / (2 * step)
    return projection.value, grad
