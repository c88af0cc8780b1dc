"""Low level helpers for Laurent tails and rational functions.

A Laurent tail ``c`` stands for ``f(z) = sum_k c[k] z**-(k+1)``. Polynomials
use ascending coefficient order, as in :mod:`numpy.polynomial.polynomial`.
"""

from typing import Union

import numpy as np
import numpy.polynomial.polynomial as npoly
from scipy.signal import lfilter
from scipy.special import poch

ArrayLike = Union[complex, np.ndarray]


def rational_tail(numerator: np.ndarray, denominator: np.ndarray, length: int) -> np.ndarray:
    """Laurent tail of ``numerator / denominator`` at infinity.

    Args:
        numerator: Ascending coefficients, degree below the denominator degree
        denominator: Ascending coefficients of a monic polynomial
        length: Number of tail coefficients to produce

    Returns:
        np.ndarray: Complex tail coefficients c_0..c_{length-1}
    """
    den = np.asarray(denominator, dtype=complex)
    degree = len(den) - 1
    if degree < 1:
        return np.zeros(length, dtype=complex)
    num = np.trim_zeros(np.asarray(numerator, dtype=complex), "b")
    if len(num) > degree:
        raise ValueError("rational function must be strictly proper")
    padded = np.zeros(degree, dtype=complex)
    padded[: len(num)] = num
    impulse = np.zeros(length, dtype=complex)
    impulse[0] = 1.0
    # In w = 1/z the tail is the impulse response of reversed num over reversed den.
    return lfilter(padded[::-1], den[::-1] / den[-1], impulse) / den[-1]


def evaluate_tail(coefficients: np.ndarray, z: ArrayLike) -> ArrayLike:
    """Evaluate ``sum c_k z^-(k+1)`` by Horner's rule in ``1/z``."""
    w = 1.0 / np.asarray(z, dtype=complex)
    return w * npoly.polyval(w, np.asarray(coefficients, dtype=complex))


def tail_derivative(coefficients: np.ndarray, z: ArrayLike, order: int = 1) -> ArrayLike:
    """Derivative of the given order of a Laurent tail."""
    if order == 0:
        return evaluate_tail(coefficients, z)
    c = np.asarray(coefficients, dtype=complex)
    k = np.arange(len(c))
    scaled = c * poch(k + 1.0, order) * (-1) ** order
    w = 1.0 / np.asarray(z, dtype=complex)
    return w ** (order + 1) * npoly.polyval(w, scaled)


def rational_derivative(
    numerator: np.ndarray, denominator: np.ndarray, z: ArrayLike, order: int = 1
) -> ArrayLike:
    """Derivative of the given order of ``numerator / denominator``."""
    num = np.asarray(numerator, dtype=complex)
    den = np.asarray(denominator, dtype=complex)
    den_prime = npoly.polyder(den)
    # d^k/dz^k (p/q) = N_k / q^(k+1)
    current = num
    for k in range(order):
        current = npoly.polysub(
            npoly.polymul(npoly.polyder(current), den),
            (k + 1) * npoly.polymul(current, den_prime),
        )
    z = np.asarray(z, dtype=complex)
    return npoly.polyval(z, current) / npoly.polyval(z, den) ** (order + 1)


def tail_numerator(denominator: np.ndarray, coefficients: np.ndarray) -> np.ndarray:
    """Polynomial part of ``q * f`` for monic ``q`` of degree n and the tail of ``f``.

    Entry j is sum_i q[j+i+1] * c[i]; when f = p/q this recovers p.
    """
    q = np.asarray(denominator, dtype=complex)
    c = np.asarray(coefficients, dtype=complex)
    n = len(q) - 1
    p = np.zeros(max(n, 1), dtype=complex)
    for j in range(n):
        count = min(n - j, len(c))
        p[j] = np.dot(q[j + 1 : j + 1 + count], c[:count])
    return p
