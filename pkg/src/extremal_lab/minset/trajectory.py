"""Tracing of negative trajectories q(z) dz**2 < 0."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..config import Config
from ..exceptions import PreconditionError, TraceStalledError
from ..models import QuadDiff, TerminationCause, TracedArc
from .quaddiff import pole_direction, qd_evaluate

logger = logging.getLogger(__name__)


def _heading(qd: QuadDiff, z: complex, previous: complex) -> complex:
    """Unit dz with q dz**2 < 0, oriented along the previous heading."""
    q = qd_evaluate(qd, z)
    if q == 0:
        return previous
    d = 1j * np.sqrt(abs(q)) / np.sqrt(q)
    d = d / abs(d)
    return d if (d * np.conj(previous)).real >= 0 else -d


def _rk4(qd: QuadDiff, z: complex, h: float, heading: complex) -> Tuple[complex, complex]:
    k1 = _heading(qd, z, heading)
    k2 = _heading(qd, z + 0.5 * h * k1, k1)
    k3 = _heading(qd, z + 0.5 * h * k2, k2)
    k4 = _heading(qd, z + h * k3, k3)
    return z + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6, k4


def _aligned_root(value: complex, reference: complex) -> complex:
    root = np.sqrt(value)
    return root if (root * np.conj(reference)).real >= 0 else -root


def _invariant_increment(qd: QuadDiff, z0: complex, z1: complex) -> float:
    """Imaginary part of the integral of sqrt(-q) over the chord, Simpson's rule."""
    dz = z1 - z0
    s0 = np.sqrt(-qd_evaluate(qd, z0))
    if (s0 * dz).real < 0:
        s0 = -s0
    sm = _aligned_root(-qd_evaluate(qd, 0.5 * (z0 + z1)), s0)
    s1 = _aligned_root(-qd_evaluate(qd, z1), sm)
    return float((dz * (s0 + 4 * sm + s1) / 6).imag)


def trace_negative_trajectory(
    qd: QuadDiff,
    start: complex,
    branch_direction: complex,
    max_length: float = Config.TRACE_MAX_LENGTH,
    tolerance: float = Config.TRACE_TOLERANCE,
    capture_radius: float = Config.TRACE_CAPTURE_RADIUS,
) -> TracedArc:
    """
    Follow the negative trajectory through ``start`` in the given direction.

    Integrates the unit direction field i |q|**0.5 / q**0.5 by RK4 with step
    doubling until the trace reaches an a-point or a b-point (within the
    capture radius), leaves the unit disk, or exceeds ``max_length``.

    Args:
        qd: Quadratic differential
        start: Starting point near, not at, a critical point
        branch_direction: Approximate initial direction
        max_length: Arclength budget
        tolerance: Local error tolerance per step
        capture_radius: Distance at which a critical point is reached

    Returns:
        TracedArc: Vertices, termination cause and invariant error

    Raises:
        PreconditionError: If the start is a critical point or the direction is zero
        TraceStalledError: If the step size collapses
    """
    start = complex(start)
    if branch_direction == 0:
        raise PreconditionError("Branch direction cannot be zero")
    targets: List[Tuple[complex, TerminationCause]] = [
        (a, TerminationCause.A_POINT) for a in qd.a_points
    ] + [(b, TerminationCause.B_POINT) for b in qd.b_points]
    points = np.array([t[0] for t in targets])
    if np.min(np.abs(points - start)) <= capture_radius:
        raise PreconditionError("Trace start lies on a critical point")
    if abs(start) >= 1:
        raise PreconditionError("Trace start must lie in the open unit disk")

    heading = _heading(qd, start, complex(branch_direction) / abs(branch_direction))
    vertices = [start]
    z = start
    length = 0.0
    invariant = 0.0
    h = Config.TRACE_INITIAL_STEP
    steps = 0
    termination = TerminationCause.MAX_LENGTH
    end_point: Optional[complex] = None

    while length < max_length:
        distances = np.abs(points - z)
        h = min(h, Config.TRACE_MAX_STEP, 0.5 * float(np.min(distances)), max_length - length)
        if h < Config.TRACE_MIN_STEP:
            raise TraceStalledError(f"Trajectory step collapsed near {z:.6g}")

        full, _ = _rk4(qd, z, h, heading)
        half, mid_heading = _rk4(qd, z, 0.5 * h, heading)
        fine, new_heading = _rk4(qd, half, 0.5 * h, mid_heading)
        error = abs(fine - full)
        if error > tolerance and h > Config.TRACE_MIN_STEP:
            h *= max(0.2, 0.9 * (tolerance / error) ** 0.2)
            continue

        invariant += _invariant_increment(qd, z, fine)
        length += abs(fine - z)
        z, heading = fine, new_heading
        vertices.append(z)
        steps += 1
        h *= min(2.0, 0.9 * (tolerance / max(error, 1e-300)) ** 0.2)

        if abs(z) >= 1:
            termination = TerminationCause.BOUNDARY
            break
        hit = np.abs(points - z) <= capture_radius
        if np.any(hit):
            index = int(np.argmax(hit))
            end_point, termination = targets[index]
            vertices.append(end_point)
            length += abs(end_point - z)
            break

    logger.debug(
        "Traced %d steps from %s, length %.4g, ended by %s",
        steps,
        format(start, ".6g"),
        length,
        termination.value,
    )
    return TracedArc(
        vertices=np.asarray(vertices),
        termination=termination,
        end_point=end_point,
        length=length,
        invariant_error=abs(invariant),
        steps=steps,
    )


def trace_from_a_point(qd: QuadDiff, index: int, **kwargs) -> TracedArc:
    """Trace the arc leaving the a-point with the given index; the arc starts at it."""
    a = qd.a_points[index]
    direction = pole_direction(qd, index)
    arc = trace_negative_trajectory(qd, a + Config.TRACE_START_OFFSET * direction, direction, **kwargs)
    arc.vertices = np.concatenate([[a], arc.vertices])
    arc.length += Config.TRACE_START_OFFSET
    return arc


def trace_from_b_point(qd: QuadDiff, index: int, direction: complex, **kwargs) -> TracedArc:
    """Trace one of the three arcs leaving the b-point with the given index."""
    b = qd.b_points[index]
    arc = trace_negative_trajectory(qd, b + Config.TRACE_START_OFFSET * direction, direction, **kwargs)
    arc.vertices = np.concatenate([[b], arc.vertices])
    arc.length += Config.TRACE_START_OFFSET
    return arc
