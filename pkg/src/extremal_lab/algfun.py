"""Algebraic functions with branch points in the unit disk and their Laurent tails."""

import logging
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy import fft

from .config import Config
from .exceptions import AmbiguousBranchError, NumericalError, PoleError, PreconditionError
from .models import BranchFactor, FunctionSpec, LaurentTail, SimplePole, Term

logger = logging.getLogger(__name__)

F1_POINTS = [0.6 + 0.3j, -0.8 + 0.1j, -0.4 + 0.8j, 0.6 - 0.6j, -0.6 - 0.6j]
F2_POINTS = [0.6 + 0.5j, -0.1 + 0.2j, -0.2 + 0.7j, -0.4 - 0.4j, 0.1 - 0.6j]


def evaluate_principal(
    spec: FunctionSpec, z: Union[complex, np.ndarray]
) -> Union[complex, np.ndarray]:
    """
    Evaluate the branch of f normalized at infinity.

    Args:
        spec: Function specification
        z: Point or array of points with |z| above the branch radius

    Returns:
        complex or np.ndarray: Values of the principal branch

    Raises:
        AmbiguousBranchError: If a point lies in the disk of branch radii
        PoleError: If a point is a pole of the rational part
    """
    z_arr = np.asarray(z, dtype=complex)
    radius = spec.branch_radius
    if np.any(np.abs(z_arr) <= radius):
        raise AmbiguousBranchError(
            f"Principal branch is ambiguous for |z| <= {radius:.6g}"
        )

    total = np.zeros(z_arr.shape, dtype=complex)
    for term in spec.terms:
        integer_sum = sum((f.exponent for f in term.factors if not f.is_branch), Fraction(0))
        value = term.limit * z_arr ** int(-1 - integer_sum)
        for factor in term.factors:
            if factor.is_branch:
                base = 1.0 - factor.center / z_arr
                value = value * np.exp(float(factor.exponent) * np.log(base))
            else:
                exponent = int(factor.exponent)
                if exponent < 0 and np.any(z_arr == factor.center):
                    raise PoleError(f"z = {factor.center} is a pole of f")
                value = value * (z_arr - factor.center) ** exponent
        total += value

    for pole in spec.poles:
        if np.any(z_arr == pole.pole):
            raise PoleError(f"z = {pole.pole} is a pole of the rational part")
        total += pole.residue / (z_arr - pole.pole)

    if np.ndim(z) == 0:
        return complex(total)
    return total


def laurent_coefficients(
    spec: FunctionSpec,
    N: int,
    sampling_radius: Optional[float] = None,
    samples: Optional[int] = None,
) -> LaurentTail:
    """
    Compute c_0..c_{N-1} of f(z) = sum c_k z^-(k+1) by FFT on a circle.

    Args:
        spec: Function specification
        N: Number of coefficients
        sampling_radius: Radius R of the sampling circle, above every singularity
        samples: Number M of samples, at least 4N (default 8N)

    Returns:
        LaurentTail: Truncated tail

    Raises:
        PreconditionError: If N < 1, R is too small or M is too small
        NumericalError: If samples are not finite
    """
    if N < 1:
        raise PreconditionError(f"Truncation length must be at least 1, got {N}")

    r_max = spec.singular_radius
    R = Config.DEFAULT_SAMPLING_RADIUS if sampling_radius is None else float(sampling_radius)
    if R <= r_max:
        raise PreconditionError(
            f"Sampling radius {R} must exceed the singular radius {r_max:.6g}"
        )

    M = Config.SAMPLING_FACTOR * N if samples is None else int(samples)
    if M < 4 * N:
        raise PreconditionError(f"Need at least 4N={4 * N} samples, got {M}")

    nodes = R * np.exp(2j * np.pi * np.arange(M) / M)
    values = evaluate_principal(spec, nodes)
    if not np.all(np.isfinite(values)):
        raise NumericalError("Non-finite samples of f on the sampling circle")

    # f(R w) = sum_k c_k R^-(k+1) w^-(k+1); ifft recovers the w^-m coefficients.
    spectrum = fft.ifft(values, workers=Config.get_thread_count())
    k = np.arange(N)
    coefficients = spectrum[k + 1] * R ** (k + 1.0)
    logger.debug("Computed %d Laurent coefficients from %d samples at R=%g", N, M, R)
    return LaurentTail(coefficients)


def h2bar_norm(tail: LaurentTail) -> float:
    """Norm of the tail with respect to arclength on the unit circle."""
    return float(np.sqrt(2 * np.pi) * np.linalg.norm(tail.coefficients))


def two_point_spec(a: complex = 0.5, label: str = "markov") -> FunctionSpec:
    """1/sqrt((z-a)(z+a)) normalized by z*f -> 1."""
    factors = [BranchFactor(a, Fraction(-1, 2)), BranchFactor(-a, Fraction(-1, 2))]
    return FunctionSpec(terms=[Term(factors, 1.0)], label=label)


def rational_spec(
    poles: Sequence[complex], residues: Sequence[complex], label: str = "rational"
) -> FunctionSpec:
    return FunctionSpec(
        poles=[SimplePole(p, r) for p, r in zip(poles, residues)], label=label
    )


def f1_spec(include_z5: bool = False) -> FunctionSpec:
    """Fourth-root product over z1..z4 plus 1/(z - z1).

    With ``include_z5`` the root runs over five points with exponent -1/5 each.
    """
    points = F1_POINTS if include_z5 else F1_POINTS[:4]
    exponent = Fraction(-1, len(points))
    term = Term([BranchFactor(p, exponent) for p in points], 1.0)
    return FunctionSpec(
        terms=[term],
        poles=[SimplePole(F1_POINTS[0], 1.0)],
        label="f1_z5" if include_z5 else "f1",
    )


def f2_spec() -> FunctionSpec:
    """Cube-root product over z1..z3 plus square-root product over z4, z5."""
    cube = Term([BranchFactor(p, Fraction(-1, 3)) for p in F2_POINTS[:3]], 1.0)
    square = Term([BranchFactor(p, Fraction(-1, 2)) for p in F2_POINTS[3:]], 1.0)
    return FunctionSpec(terms=[cube, square], label="f2")


PRESETS = {
    "f1": lambda: f1_spec(False),
    "f1_z5": lambda: f1_spec(True),
    "f2": f2_spec,
    "markov": two_point_spec,
}
