"""Search for the cut of minimal condenser capacity.

Stage 1 minimizes the discrete capacity over junction positions and edge
shapes for every candidate topology. Stage 2 turns the junctions into zeros
of the quadratic differential and adjusts them until the traced trajectories
meet. Stage 3 traces the cut and certifies it with the S-property check.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import least_squares, minimize

from ..config import Config
from ..exceptions import NumericalError, PreconditionError
from ..models import (
    Arc,
    Contour,
    CutSystem,
    EndpointLabel,
    MinimalSetResult,
    QuadDiff,
    SolveStatus,
    TerminationCause,
    TracedArc,
    graded_breakpoints,
)
from ..potential import green_equilibrium
from .quaddiff import zero_directions
from .sproperty import s_property_check
from .topology import Topology, candidate_topologies, relax_junctions
from .trajectory import trace_from_a_point, trace_from_b_point

logger = logging.getLogger(__name__)

PENALTY = 1e6


@dataclass
class Stage1Candidate:
    """Optimized shape of one topology."""
    topology: Topology
    positions: np.ndarray
    controls: np.ndarray
    capacity: float


def _label(node: int, m: int) -> EndpointLabel:
    return EndpointLabel.E0 if node < m else EndpointLabel.E1


def _edge_vertices(a: complex, b: complex, controls: np.ndarray, t: np.ndarray) -> np.ndarray:
    bend = np.zeros_like(t)
    for k, c in enumerate(controls, start=1):
        bend = bend + c * np.sin(k * np.pi * t)
    return a + t * (b - a) + 1j * (b - a) * bend


def build_cut(
    topology: Topology,
    positions: np.ndarray,
    controls: np.ndarray,
    m: int,
    panels: int,
    a_points: Sequence[complex],
) -> CutSystem:
    """Cut made of the parametrized edges, each oriented away from its branch point."""
    arcs = []
    for e, (u, v) in enumerate(topology):
        t = graded_breakpoints(panels, u < m, v < m)
        vertices = _edge_vertices(positions[u], positions[v], controls[e], t)
        if u >= m and v < m:
            vertices, u, v = vertices[::-1], v, u
        arcs.append(Arc(vertices, _label(u, m), _label(v, m)))
    return CutSystem(arcs, list(a_points))


def _cut_contour(cut: CutSystem) -> Contour:
    return Contour.concatenate(
        [Contour(arc.vertices[:-1], arc.vertices[1:]) for arc in cut.arcs]
    )


def _capacity(contour: Contour) -> float:
    if np.any(np.abs(contour.ends) >= 0.999) or np.any(np.abs(contour.starts) >= 0.999):
        return PENALTY
    try:
        return green_equilibrium(contour, compute_residual=False).capacity
    except (NumericalError, PreconditionError):
        return PENALTY


def _unpack(x: np.ndarray, base: np.ndarray, m: int, edges: int, k: int):
    junctions = base.size - m
    positions = base.copy()
    positions[m:] = x[:junctions] + 1j * x[junctions : 2 * junctions]
    controls = x[2 * junctions :].reshape(edges, k) if k else np.zeros((edges, 0))
    return positions, controls


def optimize_topology(
    topology: Topology,
    a_points: Sequence[complex],
    controls_per_edge: int = 0,
    start: Optional[Stage1Candidate] = None,
    panels: int = Config.STAGE1_PANELS_PER_ARC,
    max_evaluations: int = Config.STAGE1_MAX_EVALUATIONS,
) -> Stage1Candidate:
    """
    Minimize the discrete capacity of one topology by Nelder-Mead.

    Unknowns are the junction positions and ``controls_per_edge`` sine
    coefficients bending every edge. A ``start`` candidate seeds the search;
    its controls are padded with zeros.
    """
    m = len(a_points)
    edges = len(topology)
    k = controls_per_edge
    base = start.positions.copy() if start is not None else relax_junctions(topology, list(a_points))
    junctions = base.size - m
    controls0 = np.zeros((edges, k))
    if start is not None and start.controls.size:
        kept = min(k, start.controls.shape[1])
        controls0[:, :kept] = start.controls[:, :kept]

    x0 = np.concatenate([base[m:].real, base[m:].imag, controls0.ravel()])

    def objective(x: np.ndarray) -> float:
        positions, controls = _unpack(x, base, m, edges, k)
        try:
            cut = build_cut(topology, positions, controls, m, panels, a_points)
            return _capacity(_cut_contour(cut))
        except ValueError:
            return PENALTY

    if x0.size == 0:
        return Stage1Candidate(topology, base, np.zeros((edges, 0)), objective(x0))

    result = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={"maxfev": max_evaluations, "xatol": 1e-7, "fatol": 1e-12},
    )
    positions, controls = _unpack(result.x, base, m, edges, k)
    logger.debug("Topology %s: capacity %.8f after %d evaluations", topology, result.fun, result.nfev)
    return Stage1Candidate(topology, positions, controls, float(result.fun))


def stage1_search(
    a_points: Sequence[complex], controls_per_edge: int = Config.STAGE1_CONTROL_POINTS
) -> List[Stage1Candidate]:
    """Straight-edge search over all candidate topologies, then bent refinement of the best."""
    topologies = candidate_topologies(a_points, Config.MAX_FULL_TOPOLOGY_POINTS)
    with ThreadPoolExecutor(max_workers=Config.get_thread_count()) as pool:
        straight = list(pool.map(lambda t: optimize_topology(t, a_points), topologies))
    ranked = sorted(straight, key=lambda c: c.capacity)

    if controls_per_edge > 0:
        chosen = ranked[: Config.STAGE1_REFINED_TOPOLOGIES]
        with ThreadPoolExecutor(max_workers=Config.get_thread_count()) as pool:
            refined = list(
                pool.map(
                    lambda c: optimize_topology(c.topology, a_points, controls_per_edge, start=c),
                    chosen,
                )
            )
        ranked = sorted(refined + ranked, key=lambda c: c.capacity)
    logger.info("Stage 1 best capacity %.8f", ranked[0].capacity)
    return ranked


def _closest_offset(arc: TracedArc, target: complex) -> complex:
    i = int(np.argmin(np.abs(arc.vertices - target)))
    return complex(arc.vertices[i] - target)


def _b_direction(qd: QuadDiff, index: int, towards: complex) -> complex:
    b = qd.b_points[index]
    options = zero_directions(qd, index)
    goal = (towards - b) / abs(towards - b)
    return max(options, key=lambda d: (d * np.conj(goal)).real)


def _trace_edges(
    qd: QuadDiff, topology: Topology, m: int, budget: Sequence[float]
) -> List[TracedArc]:
    """One traced arc per topology edge, started at its branch point when it has one."""
    arcs = []
    for (u, v), length in zip(topology, budget):
        if u < m:
            arcs.append(trace_from_a_point(qd, u, max_length=length))
        elif v < m:
            arcs.append(trace_from_a_point(qd, v, max_length=length))
        else:
            arcs.append(
                trace_from_b_point(
                    qd, u - m, _b_direction(qd, u - m, qd.b_points[v - m]), max_length=length
                )
            )
    return arcs


def _edge_target(qd: QuadDiff, edge, m: int) -> complex:
    u, v = edge
    if u < m and v < m:
        return qd.a_points[v]
    far = v if u < m else (u if v < m else v)
    return qd.b_points[far - m]


def refine_b_points(
    a_points: Sequence[complex], candidate: Stage1Candidate, max_evaluations: int = 80
) -> Optional[np.ndarray]:
    """Least-squares adjustment of the junctions until traced arcs meet their targets."""
    m = len(a_points)
    junctions = candidate.positions[m:]
    if junctions.size != m - 2:
        return None
    budget = [
        2.0 * abs(candidate.positions[u] - candidate.positions[v]) + 0.2
        for u, v in candidate.topology
    ]

    def residual(x: np.ndarray) -> np.ndarray:
        b = x[: m - 2] + 1j * x[m - 2 :]
        out = np.full(2 * len(candidate.topology), 1.0)
        if np.any(np.abs(b) >= 1):
            return out
        try:
            qd = QuadDiff(list(a_points), list(b))
            arcs = _trace_edges(qd, candidate.topology, m, budget)
        except (NumericalError, PreconditionError, ValueError):
            return out
        for i, (edge, arc) in enumerate(zip(candidate.topology, arcs)):
            offset = _closest_offset(arc, _edge_target(qd, edge, m))
            out[2 * i], out[2 * i + 1] = offset.real, offset.imag
        return out

    x0 = np.concatenate([junctions.real, junctions.imag])
    solution = least_squares(residual, x0, diff_step=1e-6, xtol=1e-12, ftol=1e-14, max_nfev=max_evaluations)
    logger.info("Stage 2 mismatch %.3e after %d evaluations", np.sqrt(2 * solution.cost), solution.nfev)
    return solution.x[: m - 2] + 1j * solution.x[m - 2 :]


def trace_cut(qd: QuadDiff, topology: Topology) -> CutSystem:
    """Trace every edge of a topology; raises NumericalError when an arc misses its target."""
    m = len(qd.a_points)
    arcs = []
    limits = [Config.TRACE_MAX_LENGTH] * len(topology)
    for edge, traced in zip(topology, _trace_edges(qd, topology, m, limits)):
        target = _edge_target(qd, edge, m)
        if traced.end_point is None or abs(traced.end_point - target) > 1e-12:
            raise NumericalError(
                f"Trajectory for edge {edge} ended by {traced.termination.value} away from its target"
            )
        u, v = edge
        start_label = EndpointLabel.E0 if min(u, v) < m else EndpointLabel.E1
        end_label = (
            EndpointLabel.E0
            if traced.termination == TerminationCause.A_POINT
            else EndpointLabel.E1
        )
        arcs.append(Arc(traced.vertices, start_label, end_label))
    return CutSystem(arcs, list(qd.a_points))


def _validate(a_points: Sequence[complex]) -> List[complex]:
    points = [complex(a) for a in a_points]
    if len(points) < 2:
        raise PreconditionError("A minimal set needs at least 2 branch points")
    if any(abs(a) >= 1 for a in points):
        raise PreconditionError("Branch points must lie in the open unit disk")
    for i, a in enumerate(points):
        if any(abs(a - b) < 1e-12 for b in points[i + 1 :]):
            raise PreconditionError(f"Repeated branch point {a}")
    return points


def solve_minimal_set(
    a_points: Sequence[complex],
    controls_per_edge: int = Config.STAGE1_CONTROL_POINTS,
    panels_per_arc: int = Config.CUT_PANELS_PER_ARC,
) -> MinimalSetResult:
    """
    Cut of minimal condenser capacity for the given branch points.

    Args:
        a_points: Distinct branch points in the open unit disk
        controls_per_edge: Sine modes per edge in the Stage 1 search
        panels_per_arc: Panels per arc for the final capacity and checks

    Returns:
        MinimalSetResult: Cut, quadratic differential, capacity and status.
            The status is UNVERIFIED when tracing fails or the S-property
            mismatch exceeds the tolerance; the Stage 1 cut is then returned.
    """
    points = _validate(a_points)
    m = len(points)
    messages: List[str] = []

    ranked = stage1_search(points, controls_per_edge)
    best = ranked[0]
    stage1_cut = build_cut(best.topology, best.positions, best.controls, m, panels_per_arc, points)
    stage1_capacity = green_equilibrium(
        stage1_cut.to_contour(panels_per_arc), compute_residual=False
    ).capacity

    b_points = best.positions[m:]
    refined = refine_b_points(points, best) if m > 2 else np.zeros(0, dtype=complex)
    if refined is not None:
        b_points = refined
    quad_diff = QuadDiff(points, list(b_points))

    cut, capacity, traced_ok = stage1_cut, stage1_capacity, False
    try:
        traced = trace_cut(quad_diff, best.topology)
        traced_capacity = green_equilibrium(
            traced.to_contour(panels_per_arc), compute_residual=False
        ).capacity
        if traced_capacity <= stage1_capacity * (1 + 1e-6):
            cut, capacity, traced_ok = traced, traced_capacity, True
        else:
            messages.append(
                f"Traced cut capacity {traced_capacity:.8f} exceeds Stage 1 value {stage1_capacity:.8f}"
            )
    except NumericalError as e:
        messages.append(f"Tracing failed: {e}")
        logger.warning("Falling back to the Stage 1 cut: %s", e)

    report = s_property_check(cut, panels_per_arc=panels_per_arc)
    verified = traced_ok and report.max_mismatch <= Config.S_PROPERTY_TOLERANCE
    if not verified:
        messages.append(f"S-property mismatch {report.max_mismatch:.3e}")
    status = SolveStatus.VERIFIED if verified else SolveStatus.UNVERIFIED
    logger.info("Minimal set for %d points: capacity %.8f, %s", m, capacity, status.value)

    return MinimalSetResult(
        cut=cut,
        quad_diff=quad_diff,
        capacity=capacity,
        stage1_capacity=stage1_capacity,
        topology=list(best.topology),
        status=status,
        s_property=report,
        messages=messages,
    )
