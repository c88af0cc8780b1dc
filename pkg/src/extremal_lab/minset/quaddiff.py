"""Quadratic differentials of minimal sets and disk automorphisms."""

from typing import Callable, List, Optional, Union

import numpy as np

from ..exceptions import PoleError, PreconditionError
from ..models import QuadDiff

Points = Union[complex, np.ndarray]


def _product(points: List[complex], z: np.ndarray, skip: Optional[int] = None) -> np.ndarray:
    value = np.ones(z.shape, dtype=complex)
    for j, p in enumerate(points):
        if j != skip:
            value = value * (z - p) * (1 - np.conj(p) * z)
    return value


def qd_evaluate(qd: QuadDiff, z: Points) -> Union[complex, np.ndarray]:
    """
    q(z) = prod(z - b)(1 - conj(b) z) / prod(z - a)(1 - conj(a) z).

    Raises:
        PoleError: If z is an a-point or the reflection of one
    """
    z_arr = np.asarray(z, dtype=complex)
    for a in qd.a_points:
        if np.any(z_arr == a) or (a != 0 and np.any(z_arr == 1 / np.conj(a))):
            raise PoleError(f"z is a pole of the quadratic differential at {a}")
    value = _product(qd.b_points, z_arr) / _product(qd.a_points, z_arr)
    return complex(value) if np.ndim(z) == 0 else value


def residue_at(qd: QuadDiff, index: int) -> complex:
    """lim (z - a) q(z) at the a-point with the given index."""
    a = qd.a_points[index]
    z = np.asarray(a, dtype=complex)
    value = _product(qd.b_points, z) / (
        _product(qd.a_points, z, skip=index) * (1 - np.conj(a) * a)
    )
    return complex(value)


def zero_coefficient(qd: QuadDiff, index: int) -> complex:
    """q'(b) at the b-point with the given index (simple zero)."""
    b = qd.b_points[index]
    z = np.asarray(b, dtype=complex)
    value = _product(qd.b_points, z, skip=index) * (1 - np.conj(b) * b) / _product(qd.a_points, z)
    return complex(value)


def pole_direction(qd: QuadDiff, index: int) -> complex:
    """Unit direction of the only trajectory leaving a simple pole."""
    theta = np.pi - np.angle(residue_at(qd, index))
    return complex(np.exp(1j * theta))


def zero_directions(qd: QuadDiff, index: int) -> List[complex]:
    """Unit directions of the three trajectories leaving a simple zero."""
    base = (np.pi - np.angle(zero_coefficient(qd, index))) / 3
    return [complex(np.exp(1j * (base + 2 * np.pi * k / 3))) for k in range(3)]


def moebius(c: complex) -> Callable[[Points], Points]:
    """Disk automorphism z -> (z - c) / (1 - conj(c) z)."""
    c = complex(c)
    if abs(c) >= 1:
        raise PreconditionError(f"Moebius parameter {c} must lie in the open disk")

    def mapping(z: Points) -> Points:
        z_arr = np.asarray(z, dtype=complex)
        value = (z_arr - c) / (1 - np.conj(c) * z_arr)
        return complex(value) if np.ndim(z) == 0 else value

    return mapping


def geodesic_arc(a1: complex, a2: complex, points: int = 401) -> np.ndarray:
    """Hyperbolic geodesic between two points of the disk, as a polyline."""
    forward, backward = moebius(a1), moebius(-a1)
    w = forward(a2)
    return np.asarray(backward(np.linspace(0.0, 1.0, points) * w))
