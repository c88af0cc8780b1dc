"""Numerical checks of the symmetry property of a cut."""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import Config
from ..models import (
    CapacityResult,
    CutSystem,
    EndpointLabel,
    HSquaredReport,
    NormalDerivativeSample,
    ProbeLoop,
    SPropertyReport,
)
from ..potential import green_equilibrium, green_gradient, green_potential

logger = logging.getLogger(__name__)


def _arc_samples(
    vertices: np.ndarray, count: int, margin: float
) -> List[Tuple[complex, complex]]:
    """(point, unit tangent) pairs at central arclength fractions, away from the ends."""
    steps = np.diff(vertices)
    cumulative = np.concatenate([[0.0], np.cumsum(np.abs(steps))])
    total = cumulative[-1]
    out = []
    for fraction in np.linspace(0.1, 0.9, count):
        s = fraction * total
        if s < margin or total - s < margin:
            continue
        i = min(int(np.searchsorted(cumulative, s, side="right")) - 1, steps.size - 1)
        tangent = steps[i] / abs(steps[i])
        point = vertices[i] + tangent * (s - cumulative[i])
        out.append((complex(point), complex(tangent)))
    return out


def _other_arcs(cut: CutSystem, index: int) -> Optional[CutSystem]:
    rest = [arc for j, arc in enumerate(cut.arcs) if j != index]
    return CutSystem(rest) if rest else None


def _junction_angles(cut: CutSystem) -> List[List[float]]:
    """Sorted angular gaps between arcs leaving every junction."""
    junctions: List[complex] = []
    for point, label in cut.endpoints():
        if label == EndpointLabel.E1 and all(abs(point - j) > 1e-9 for j in junctions):
            junctions.append(point)

    result = []
    for junction in junctions:
        angles = []
        for arc in cut.arcs:
            for vertices in (arc.vertices, arc.vertices[::-1]):
                if abs(vertices[0] - junction) <= 1e-9:
                    away = np.abs(vertices - junction)
                    k = int(np.argmax(away >= min(1e-2, 0.5 * away.max())))
                    angles.append(np.angle(vertices[k] - junction))
        angles = np.sort(np.mod(angles, 2 * np.pi))
        if angles.size >= 2:
            gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
            result.append(sorted(float(g) for g in gaps))
    return result


def s_property_check(
    cut: CutSystem,
    panels_per_arc: int = Config.CUT_PANELS_PER_ARC,
    offset: Optional[float] = None,
    samples_per_arc: int = 16,
    equilibrium: Optional[CapacityResult] = None,
) -> SPropertyReport:
    """
    Compare one-sided normal derivatives of the Green equilibrium potential.

    Derivatives come from second order one-sided differences with the Robin
    constant as the on-arc value; the mismatch at a sample is
    |d+ - d-| / (|d+| + |d-|).

    Args:
        cut: Cut inside the unit disk
        panels_per_arc: Discretization of every arc
        offset: Finite-difference offset h, default max(1e-3, 3 * panel length)
        samples_per_arc: Samples per arc before skipping
        equilibrium: Precomputed equilibrium of ``cut.to_contour(panels_per_arc)``

    Returns:
        SPropertyReport: Samples, maximum mismatch, skipped samples and junction angles
    """
    contour = cut.to_contour(panels_per_arc)
    result = equilibrium if equilibrium is not None else green_equilibrium(contour)
    panel = float(np.median(contour.arc_weights))
    h = offset if offset is not None else max(Config.FD_OFFSET_MIN, 3 * panel)
    robin = result.robin_constant

    samples: List[NormalDerivativeSample] = []
    skipped: List[str] = []
    for index, arc in enumerate(cut.arcs):
        sel = contour.arc_index == index
        margin = 3 * float(np.max(contour.arc_weights[sel]))
        others = _other_arcs(cut, index)
        for point, tangent in _arc_samples(arc.vertices, samples_per_arc, margin):
            normal = 1j * tangent
            probes = point + np.array([h, 2 * h, -h, -2 * h]) * normal
            if np.any(np.abs(probes) >= 1):
                skipped.append(f"arc {index}: offset leaves the disk at {point:.4f}")
                continue
            if others is not None and np.min(others.distance(probes)) < 2 * h:
                skipped.append(f"arc {index}: offset crosses another arc at {point:.4f}")
                continue
            v = green_potential(result, probes)
            plus = (-3 * robin + 4 * v[0] - v[1]) / (2 * h)
            minus = (-3 * robin + 4 * v[2] - v[3]) / (2 * h)
            scale = abs(plus) + abs(minus)
            mismatch = abs(plus - minus) / scale if scale > 0 else 0.0
            samples.append(NormalDerivativeSample(index, point, float(plus), float(minus), float(mismatch)))

    if skipped:
        logger.warning("Skipped %d S-property samples", len(skipped))
    report = SPropertyReport(
        samples=samples,
        offset=h,
        capacity=result.capacity,
        skipped=skipped,
        junction_angles=_junction_angles(cut),
    )
    logger.info("S-property mismatch %.3e over %d samples", report.max_mismatch, len(samples))
    return report


def _h_values(result: CapacityResult, z: np.ndarray) -> np.ndarray:
    return 2.0 * np.asarray(green_gradient(result, z))


def h_squared_diagnostic(
    cut: CutSystem,
    equilibrium: CapacityResult,
    probe_loops: Sequence[ProbeLoop] = (),
    offset: Optional[float] = None,
    samples_per_arc: int = 12,
) -> HSquaredReport:
    """
    Jumps of H = 2 dV/dz across the arcs and windings of H**2 around loops.

    One-sided limits of H are extrapolated from offsets delta and 2 delta;
    the jump residual of an arc is the largest |H+ + H-| / max(|H+|, |H-|).
    The winding of H**2 around a loop counts zeros minus poles inside it.
    """
    contour = equilibrium.contour
    panel = float(np.median(contour.arc_weights))
    delta = offset if offset is not None else max(Config.FD_OFFSET_MIN, 3 * panel)
    report = HSquaredReport()

    for index, arc in enumerate(cut.arcs):
        sel = contour.arc_index == index
        margin = 3 * float(np.max(contour.arc_weights[sel])) if np.any(sel) else 0.0
        worst = 0.0
        for point, tangent in _arc_samples(arc.vertices, samples_per_arc, margin):
            normal = 1j * tangent
            probes = point + np.array([delta, 2 * delta, -delta, -2 * delta]) * normal
            if np.any(np.abs(probes) >= 1):
                report.skipped.append(f"arc {index}: offset leaves the disk at {point:.4f}")
                continue
            h = _h_values(equilibrium, probes)
            plus = 2 * h[0] - h[1]
            minus = 2 * h[2] - h[3]
            scale = max(abs(plus), abs(minus))
            if scale > 0:
                worst = max(worst, abs(plus + minus) / scale)
        report.jump_residuals.append(float(worst))

    for loop in probe_loops:
        theta = 2 * np.pi * np.arange(loop.samples + 1) / loop.samples
        z = loop.center + loop.radius * np.exp(1j * theta)
        values = _h_values(equilibrium, z) ** 2
        if not np.all(np.isfinite(values)) or np.any(values == 0):
            report.skipped.append(f"loop at {loop.center:.4f} hits a singular value")
            report.raw_windings.append(float("nan"))
            report.windings.append(0)
            continue
        turns = float((np.unwrap(np.angle(values))[-1] - np.angle(values[0])) / (2 * np.pi))
        report.raw_windings.append(turns)
        report.windings.append(int(round(turns)))
    return report
