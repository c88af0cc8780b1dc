"""Classical and multipoint Pade approximants with pole extraction."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import numpy.polynomial.polynomial as npoly
from scipy import fft, linalg

from .algfun import evaluate_principal
from .config import Config
from .exceptions import (
    DefectivePadeError,
    ExtremalLabError,
    PreconditionError,
    QuadratureRadiusError,
)
from .models import FunctionSpec, InterpolationScheme, LaurentTail, PadeResult, RationalFn, SchemeKind
from .series import tail_numerator

logger = logging.getLogger(__name__)

Source = Union[FunctionSpec, LaurentTail]


def _solve_moment_system(matrix: np.ndarray, rhs: np.ndarray) -> tuple:
    """Least-squares solve with a rank-deficiency flag."""
    singular = linalg.svdvals(matrix) if matrix.size else np.zeros(0)
    defective = bool(
        singular.size and (singular[-1] <= Config.HANKEL_RCOND * max(singular[0], 1e-300))
    )
    solution, _, _, _ = linalg.lstsq(matrix, rhs, cond=Config.HANKEL_RCOND)
    residual = float(np.linalg.norm(matrix @ solution - rhs))
    return solution, residual, defective


def classical_pade(tail: LaurentTail, n: int, strict: bool = False) -> PadeResult:
    """
    Diagonal Pade approximant at infinity from Laurent coefficients.

    The monic denominator solves the Hankel system sum_k q_k c_{j+k} = -c_{j+n};
    the numerator is the polynomial part of q * f.

    Args:
        tail: Laurent tail with at least 2n coefficients
        n: Denominator degree
        strict: Raise instead of flagging a rank-deficient system

    Returns:
        PadeResult: Approximant, Hankel residual and the first n tail residuals of q f - p

    Raises:
        PreconditionError: If n < 1 or the tail is too short
        DefectivePadeError: If ``strict`` and the Hankel system is rank deficient
    """
    if n < 1:
        raise PreconditionError(f"Pade degree must be at least 1, got {n}")
    if tail.truncation_length < 2 * n:
        raise PreconditionError(f"Need 2n={2 * n} coefficients, tail has {tail.truncation_length}")

    c = tail.coefficients
    hankel = linalg.hankel(c[:n], c[n - 1 : 2 * n - 1])
    solution, residual, defective = _solve_moment_system(hankel, -c[n : 2 * n])
    if defective:
        if strict:
            raise DefectivePadeError(f"Hankel system of degree {n} is rank deficient")
        logger.warning("Defective Pade table entry at degree %d", n)

    q = np.concatenate([solution, [1.0]])
    p = tail_numerator(q, c)
    conditions = hankel @ solution + c[n : 2 * n]
    return PadeResult(
        rational=RationalFn(p, q),
        system_residual=residual,
        interpolation_residuals=np.abs(conditions),
        defective=defective,
        scheme=SchemeKind.AT_INFINITY,
    )


def tail_singular_radius(tail: LaurentTail) -> float:
    """
    Root-test estimate of the singular radius, floored for short or rational tails.

    Coefficients below ``TAIL_NOISE_FLOOR * max|c_k|`` are roundoff and ignored.
    The estimate is the larger of the k-th roots and the geometric decay rate
    fitted to the upper half of the significant coefficients.
    """
    c = np.abs(tail.coefficients)
    if c.size < 2 or not np.any(c > 0):
        return Config.TAIL_SINGULAR_RADIUS_FLOOR
    significant = np.flatnonzero(c > Config.TAIL_NOISE_FLOOR * np.max(c))
    significant = significant[significant >= 1]
    if significant.size == 0:
        return Config.TAIL_SINGULAR_RADIUS_FLOOR
    upper = significant[significant >= max(1, significant[-1] // 2)]
    estimate = float(np.max(c[upper] ** (1.0 / upper)))
    if upper.size >= 2:
        slope = np.polyfit(upper, np.log(c[upper]), 1)[0]
        estimate = max(estimate, float(np.exp(slope)))
    return max(estimate, Config.TAIL_SINGULAR_RADIUS_FLOOR)


def _evaluate(source: Source, z: np.ndarray) -> np.ndarray:
    if isinstance(source, LaurentTail):
        return np.asarray(source.evaluate(z))
    return np.asarray(evaluate_principal(source, z))


def quadrature_radius(singular_radius: float, finite_points: Sequence[complex]) -> float:
    """Radius of the circle separating singularities from interpolation points."""
    if singular_radius >= 1:
        raise QuadratureRadiusError(f"Singular radius {singular_radius:.6g} is not inside the disk")
    if not finite_points:
        return 1.0
    nearest = min(abs(e) for e in finite_points)
    radius = float(np.sqrt(singular_radius * nearest)) if singular_radius > 0 else 0.5 * nearest
    if not singular_radius * (1 + 1e-9) < radius < nearest * (1 - 1e-9):
        raise QuadratureRadiusError(
            f"No quadrature circle between radius {singular_radius:.6g} and scheme modulus {nearest:.6g}"
        )
    return radius


def multipoint_pade(
    source: Source,
    scheme: InterpolationScheme,
    n: int,
    nodes: int = Config.PADE_QUADRATURE_NODES,
    strict: bool = False,
) -> PadeResult:
    """
    Multipoint Pade approximant for an interpolation scheme.

    The denominator satisfies the orthogonality relations
    contour integral of z^j q f / v dz = 0, j < n, on a circle L between the
    singularities and the finite scheme points, with v the scheme polynomial.
    The numerator follows from p = q f + v * S, S(z) the Cauchy integral of
    q f / v over L, sampled outside L.

    Args:
        source: Function specification or Laurent tail
        scheme: Interpolation scheme providing E_n
        n: Denominator degree
        nodes: Trapezoid nodes on L
        strict: Raise instead of flagging a rank-deficient system

    Returns:
        PadeResult: Approximant with residuals of q f - p at the finite scheme points

    Raises:
        PreconditionError: If a scheme point lies in the closed unit disk
        QuadratureRadiusError: If no separating circle exists
    """
    if n < 1:
        raise PreconditionError(f"Pade degree must be at least 1, got {n}")
    finite = scheme.finite(n)
    if any(abs(e) <= 1 for e in finite):
        raise PreconditionError("Scheme points must lie outside the closed unit disk")

    if isinstance(source, LaurentTail):
        singular = tail_singular_radius(source)
    else:
        singular = source.singular_radius
    rho = quadrature_radius(singular, finite)

    v = npoly.polyfromroots(finite) if finite else np.array([1.0 + 0j])
    t = rho * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    g = _evaluate(source, t) / npoly.polyval(t, v)
    # (1/2pi i) * contour integral of z^k g dz  ~  mean of t^(k+1) g
    moments = np.array([np.mean(t ** (k + 1) * g) for k in range(2 * n)])
    matrix = linalg.hankel(moments[:n], moments[n - 1 : 2 * n - 1])
    solution, residual, defective = _solve_moment_system(matrix, -moments[n : 2 * n])
    if defective:
        if strict:
            raise DefectivePadeError(f"Multipoint system of degree {n} is rank deficient")
        logger.warning("Defective multipoint Pade entry at degree %d", n)
    q = np.concatenate([solution, [1.0]])

    nearest = min((abs(e) for e in finite), default=np.inf)
    outer = rho * min(1.25, float(np.sqrt(nearest / rho))) if finite else 1.25 * rho
    samples = max(64, 4 * n)
    z = outer * np.exp(2j * np.pi * np.arange(samples) / samples)
    qg = npoly.polyval(t, q) * g
    cauchy = (t[None, :] * qg[None, :] / (t[None, :] - z[:, None])).mean(axis=1)
    values = npoly.polyval(z, q) * _evaluate(source, z) + npoly.polyval(z, v) * cauchy
    p = (fft.fft(values) / samples)[:n] / outer ** np.arange(n)

    rational = RationalFn(p, q)
    if finite:
        e = np.asarray(finite)
        errors = np.abs(npoly.polyval(e, q) * _evaluate(source, e) - npoly.polyval(e, p))
    else:
        errors = np.abs(matrix @ solution + moments[n : 2 * n])
    return PadeResult(
        rational=rational,
        system_residual=residual,
        interpolation_residuals=errors,
        defective=defective,
        scheme=scheme.kind,
        quadrature_radius=rho,
    )


def poles_of(r: RationalFn) -> np.ndarray:
    """Roots of the denominator, each refined by one Newton step."""
    if r.degree < 1:
        raise PreconditionError("A constant denominator has no poles")
    roots = npoly.polyroots(r.denominator).astype(complex)
    derivative = npoly.polyder(r.denominator)
    for i, z in enumerate(roots):
        slope = npoly.polyval(z, derivative)
        if slope == 0:
            continue
        candidate = z - npoly.polyval(z, r.denominator) / slope
        if np.isfinite(candidate) and abs(npoly.polyval(candidate, r.denominator)) <= abs(
            npoly.polyval(z, r.denominator)
        ):
            roots[i] = candidate
    r.cached_poles = roots
    return roots


def pade_sweep(
    source: Source, scheme: InterpolationScheme, degrees: Sequence[int]
) -> Dict[int, Optional[PadeResult]]:
    """Multipoint approximants for several degrees; failed degrees map to None."""

    def solve(n: int) -> Optional[PadeResult]:
        try:
            if scheme.kind == SchemeKind.AT_INFINITY and isinstance(source, LaurentTail):
                return classical_pade(source, n)
            return multipoint_pade(source, scheme, n)
        except ExtremalLabError as e:
            logger.warning("Pade degree %d failed: %s", n, e)
            return None

    with ThreadPoolExecutor(max_workers=Config.get_thread_count()) as pool:
        results: List[Optional[PadeResult]] = list(pool.map(solve, degrees))
    return dict(zip(degrees, results))
