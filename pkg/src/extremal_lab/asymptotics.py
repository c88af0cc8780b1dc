"""
Experiment harness cross-checking approximation errors and poles against potential theory.

The optimization side (critical points, Pade approximants) and the potential
side (minimal sets, equilibrium measures, capacities) are computed
independently and compared degree by degree.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .algfun import laurent_coefficients, rational_spec, two_point_spec
from .config import Config, OptimizerConfig
from .exceptions import ExtremalLabError, PreconditionError
from .hardy import find_critical, interpolation_certificate
from .minset import geodesic_arc, solve_minimal_set
from .models import (
    Arc,
    CapacityResult,
    CheckResult,
    Contour,
    CriticalPoint,
    CutSystem,
    DiscreteMeasure,
    FunctionSpec,
    InterpolationScheme,
    LaurentTail,
    MinimalSetResult,
    PadeVsBestReport,
    PoleDistEntry,
    PoleDistReport,
    RateEntry,
    RateReport,
    SchemeKind,
)
from .pade import classical_pade, multipoint_pade, pade_sweep, poles_of
from .potential import (
    balayage_onto_contour,
    balayage_to_circle,
    fekete_points,
    green_disk,
    green_equilibrium,
    green_potential,
    log_potential,
    reflection_balayage_gap,
    weighted_equilibrium,
)
from .progress import ProgressTracker

logger = logging.getLogger(__name__)

CriticalSweep = Dict[int, List[CriticalPoint]]


def critical_sweep(
    tail: LaurentTail, degrees: Sequence[int], cfg: Optional[OptimizerConfig] = None
) -> CriticalSweep:
    """Critical points for every degree, computed in parallel and merged in degree order."""
    tracker = ProgressTracker(len(degrees), label="critical points")

    def run(n: int) -> List[CriticalPoint]:
        try:
            points = find_critical(tail, n, cfg)
        except ExtremalLabError as e:
            logger.warning("Critical point search failed at degree %d: %s", n, e)
            points = []
        tracker.increment(f"degree {n}")
        return points

    with ThreadPoolExecutor(max_workers=Config.get_thread_count()) as pool:
        results = list(pool.map(run, degrees))
    return dict(zip(degrees, results))


def minimal_set_equilibrium(minimal_set: MinimalSetResult) -> CapacityResult:
    """Green equilibrium of a minimal-set cut at the checking resolution."""
    return green_equilibrium(minimal_set.cut.to_contour(Config.CUT_PANELS_PER_ARC))


def sup_norm_error(tail: LaurentTail, point: CriticalPoint, samples: int = Config.SUP_NORM_SAMPLES) -> float:
    """Maximum of |f - r| over equispaced samples of the unit circle."""
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    return float(np.max(np.abs(tail.evaluate(z) - point.rational.evaluate(z))))


def _relative_gap(value: float, reference: float) -> float:
    if reference > 0:
        return abs(value - reference) / reference
    return abs(value)


def error_rate_study(
    spec: FunctionSpec,
    degrees: Sequence[int],
    cfg: Optional[OptimizerConfig] = None,
    truncation: int = Config.DEFAULT_TRUNCATION,
    minimal_set: Optional[MinimalSetResult] = None,
    critical: Optional[CriticalSweep] = None,
) -> RateReport:
    """
    Error rates of best critical points against exp(-1/cap(K, T)).

    Args:
        spec: Function with its branch points
        degrees: Degrees n to study
        cfg: Optimizer settings for the critical point search
        truncation: Laurent tail length N
        minimal_set: Precomputed minimal set for the branch points
        critical: Precomputed critical points per degree

    Returns:
        RateReport: rho_n in the 2-norm and on the circle, their 2n-th roots
            and relative gaps to the capacity-predicted limit. Degrees without
            a converged start are flagged and the study continues.
    """
    tail = laurent_coefficients(spec, truncation)
    norm = tail.coefficient_norm()

    capacity = 0.0
    if len(spec.branch_points) >= 2:
        if minimal_set is None:
            minimal_set = solve_minimal_set(spec.branch_points)
        capacity = minimal_set_equilibrium(minimal_set).capacity
    else:
        logger.info("%s has fewer than two branch points; predicted rate is 0", spec.label)
    predicted = float(np.exp(-1.0 / capacity)) if capacity > 0 else 0.0

    if critical is None:
        critical = critical_sweep(tail, degrees, cfg)

    report = RateReport(label=spec.label, capacity=capacity, predicted_limit=predicted)
    for n in degrees:
        points = critical.get(n, [])
        if not points:
            report.entries.append(
                RateEntry(
                    degree=n,
                    rho2=float("nan"),
                    rho_inf=float("nan"),
                    root2=float("nan"),
                    root_inf=float("nan"),
                    gap2=float("nan"),
                    gap_inf=float("nan"),
                    converged=False,
                    message="no start converged",
                )
            )
            continue
        best = points[0]
        rho2 = float(np.sqrt(max(best.objective, 0.0)))
        rho_inf = sup_norm_error(tail, best)
        root2 = rho2 ** (1.0 / (2 * n))
        root_inf = rho_inf ** (1.0 / (2 * n))
        degenerate = rho2 <= Config.DEGENERATE_RELATIVE_ERROR * norm
        report.entries.append(
            RateEntry(
                degree=n,
                rho2=rho2,
                rho_inf=rho_inf,
                root2=root2,
                root_inf=root_inf,
                gap2=_relative_gap(root2, predicted),
                gap_inf=_relative_gap(root_inf, predicted),
                degenerate=degenerate,
                message="error at truncation noise" if degenerate else "",
            )
        )
    logger.info(
        "Rate study for %s: capacity %.6f, predicted limit %.6f", spec.label, capacity, predicted
    )
    return report


def probe_grid(
    cut: Optional[CutSystem],
    size: int = Config.PROBE_GRID_SIZE,
    distance: float = Config.PROBE_DISTANCE,
) -> np.ndarray:
    """Square-grid points at least ``distance`` away from the cut and the unit circle."""
    axis = np.linspace(-1.0, 1.0, size)
    z = (axis[None, :] + 1j * axis[:, None]).ravel()
    z = z[np.abs(z) <= 1 - distance]
    if cut is not None:
        z = z[cut.distance(z) >= distance]
    return z


def _arclength_parameter(cut: CutSystem, z: np.ndarray) -> np.ndarray:
    """Arclength position of the nearest cut point, arcs laid end to end."""
    starts, steps, offsets = [], [], []
    total = 0.0
    for arc in cut.arcs:
        lengths = np.abs(np.diff(arc.vertices))
        starts.append(arc.vertices[:-1])
        steps.append(np.diff(arc.vertices))
        offsets.append(total + np.concatenate([[0.0], np.cumsum(lengths)[:-1]]))
        total += float(np.sum(lengths))
    s0 = np.concatenate(starts)[None, :]
    d = np.concatenate(steps)[None, :]
    base = np.concatenate(offsets)
    z = np.asarray(z, dtype=complex)[:, None]
    t = np.clip(np.real((z - s0) * np.conj(d)) / np.maximum(np.abs(d) ** 2, 1e-300), 0.0, 1.0)
    gaps = np.abs(z - (s0 + t * d))
    nearest = np.argmin(gaps, axis=1)
    rows = np.arange(z.shape[0])
    return base[nearest] + t[rows, nearest] * np.abs(d[0, nearest])


def _distribution_deviation(cut: CutSystem, poles: np.ndarray, equilibrium: CapacityResult) -> float:
    """Kolmogorov distance between the arclength distributions of poles and equilibrium mass."""
    s_poles = np.sort(_arclength_parameter(cut, poles))
    s_mass = _arclength_parameter(cut, equilibrium.equilibrium.points)
    order = np.argsort(s_mass)
    s_mass = s_mass[order]
    cdf_mass = np.cumsum(equilibrium.equilibrium.weights[order])
    cdf_mass /= cdf_mass[-1]
    grid = np.concatenate([s_poles, s_mass])
    f_poles = np.searchsorted(s_poles, grid, side="right") / s_poles.size
    f_mass = np.concatenate([[0.0], cdf_mass])[np.searchsorted(s_mass, grid, side="right")]
    return float(np.max(np.abs(f_poles - f_mass)))


def _pole_green_potential(poles: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Green potential of the pole counting measure; poles off the open disk carry none."""
    inside = poles[np.abs(poles) < 1]
    if inside.size == 0:
        return np.zeros(z.shape)
    values = np.asarray(green_disk(z[:, None], inside[None, :]))
    return values.sum(axis=1) / poles.size


def _nonincreasing(values: List[float]) -> bool:
    return all(b <= a * (1 + 1e-12) for a, b in zip(values, values[1:]))


def pole_distribution_study(
    poles_by_degree: Mapping[int, Sequence[complex]],
    cut: CutSystem,
    equilibrium: Optional[CapacityResult] = None,
) -> PoleDistReport:
    """
    Distance and potential metrics of pole sets against a cut's Green equilibrium.

    Args:
        poles_by_degree: Poles of the approximant of each degree
        cut: The cut the poles should accumulate on
        equilibrium: Green equilibrium of the cut, computed when omitted

    Returns:
        PoleDistReport: Per-degree metrics and monotone-trend flags
    """
    if equilibrium is None:
        equilibrium = green_equilibrium(cut.to_contour(Config.CUT_PANELS_PER_ARC))
    probes = probe_grid(cut)
    if probes.size == 0:
        raise PreconditionError("The cut leaves no probe points in the disk")
    target = np.asarray(green_potential(equilibrium, probes))

    report = PoleDistReport(probe_count=int(probes.size))
    for n in sorted(poles_by_degree):
        poles = np.asarray(poles_by_degree[n], dtype=complex)
        if poles.size == 0:
            continue
        outside = int(np.count_nonzero(np.abs(poles) >= 1))
        if outside:
            logger.warning("Degree %d has %d poles outside the disk", n, outside)
        distance = cut.distance(poles)
        discrepancy = float(np.max(np.abs(_pole_green_potential(poles, probes) - target)))
        report.entries.append(
            PoleDistEntry(
                degree=int(n),
                poles=[complex(p) for p in poles],
                max_distance=float(np.max(distance)),
                fraction_near=float(np.mean(distance <= Config.CUT_PROXIMITY)),
                potential_discrepancy=discrepancy,
                distribution_deviation=_distribution_deviation(cut, poles, equilibrium),
                outside_disk=outside,
            )
        )
    report.monotone_distance = _nonincreasing([e.max_distance for e in report.entries])
    report.monotone_discrepancy = _nonincreasing([e.potential_discrepancy for e in report.entries])
    return report


def _rational_pole_report(poles_by_degree: Mapping[int, np.ndarray], spec: FunctionSpec) -> PoleDistReport:
    """Metrics for a function without a cut: distances to its own poles."""
    true_poles = np.array([p.pole for p in spec.poles], dtype=complex)
    report = PoleDistReport()
    for n in sorted(poles_by_degree):
        poles = np.asarray(poles_by_degree[n], dtype=complex)
        if poles.size == 0 or true_poles.size == 0:
            continue
        distance = np.min(np.abs(poles[:, None] - true_poles[None, :]), axis=1)
        # spurious extra poles of a reducible approximant are paired with zero residues
        matched = np.sort(distance)[: true_poles.size]
        report.entries.append(
            PoleDistEntry(
                degree=int(n),
                poles=[complex(p) for p in poles],
                max_distance=float(np.max(matched)),
                fraction_near=float(np.mean(distance <= Config.CUT_PROXIMITY)),
                potential_discrepancy=0.0,
                distribution_deviation=0.0,
            )
        )
    report.monotone_distance = _nonincreasing([e.max_distance for e in report.entries])
    report.monotone_discrepancy = True
    return report


def _matched_gap(a: np.ndarray, b: np.ndarray) -> float:
    if a.size != b.size:
        return float("inf")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


def _balayage_target(
    scheme: InterpolationScheme, n: int, contour: Contour
) -> DiscreteMeasure:
    """Balayage of the normalized scheme measure onto the contour."""
    finite = scheme.finite(n)
    share = len(finite) / (2 * n)
    weights = np.zeros(contour.panel_count)
    if share > 0:
        scheme_measure = DiscreteMeasure.uniform(finite)
        weights += share * balayage_onto_contour(scheme_measure, contour).weights
    if share < 1:
        at_infinity = weighted_equilibrium(contour, DiscreteMeasure.dirac(0.0), compute_residual=False)
        weights += (1 - share) * at_infinity.equilibrium.weights
    return DiscreteMeasure(contour.nodes, weights)


def pade_vs_best_study(
    spec: FunctionSpec,
    scheme: InterpolationScheme,
    degrees: Sequence[int],
    cfg: Optional[OptimizerConfig] = None,
    truncation: int = Config.DEFAULT_TRUNCATION,
    minimal_set: Optional[MinimalSetResult] = None,
    critical: Optional[CriticalSweep] = None,
) -> PadeVsBestReport:
    """
    Pole metrics of multipoint Pade approximants next to those of best critical points.

    For a reflected-poles scheme without stored points the scheme is built
    from the best critical point of each degree, and the fixed-point gap
    between the Pade poles and the critical poles is recorded.

    Args:
        spec: Function with its branch points
        scheme: Interpolation scheme
        degrees: Degrees to study
        cfg: Optimizer settings
        truncation: Laurent tail length N
        minimal_set: Precomputed minimal set
        critical: Precomputed critical points per degree

    Returns:
        PadeVsBestReport: Pade and best pole metrics, balayage discrepancies, skipped entries
    """
    tail = laurent_coefficients(spec, truncation)
    if critical is None:
        critical = critical_sweep(tail, degrees, cfg)

    skipped: List[str] = []
    if scheme.kind == SchemeKind.REFLECTED_POLES and not scheme.finite_points:
        best_poles = {n: critical[n][0].poles for n in degrees if critical.get(n)}
        scheme = InterpolationScheme.reflected_poles(best_poles)

    source = tail if scheme.kind == SchemeKind.AT_INFINITY else spec
    usable = [n for n in degrees if scheme.kind == SchemeKind.AT_INFINITY or n in scheme.finite_points]
    for n in degrees:
        if n not in usable:
            skipped.append(f"degree {n}: scheme has no points")
    sweep = pade_sweep(source, scheme, usable)

    pade_poles: Dict[int, np.ndarray] = {}
    for n, result in sweep.items():
        if result is None:
            skipped.append(f"degree {n}: Pade approximant failed")
        elif result.defective:
            skipped.append(f"degree {n}: defective Pade entry")
        else:
            pade_poles[n] = poles_of(result.rational)

    best_poles_by_degree = {n: critical[n][0].poles for n in degrees if critical.get(n)}

    report = PadeVsBestReport(scheme=scheme.kind, pade=PoleDistReport(), skipped=skipped)
    if len(spec.branch_points) < 2:
        report.pade = _rational_pole_report(pade_poles, spec)
        if best_poles_by_degree:
            report.best = _rational_pole_report(best_poles_by_degree, spec)
        report.skipped.append("no branch cut: potential metrics not applicable")
    else:
        if minimal_set is None:
            minimal_set = solve_minimal_set(spec.branch_points)
        cut = minimal_set.cut
        equilibrium = minimal_set_equilibrium(minimal_set)
        report.pade = pole_distribution_study(pade_poles, cut, equilibrium)
        for entry in report.pade.entries:
            if entry.outside_disk:
                report.skipped.append(
                    f"degree {entry.degree}: {entry.outside_disk} Pade poles outside the disk"
                )
        if best_poles_by_degree:
            report.best = pole_distribution_study(best_poles_by_degree, cut, equilibrium)

        contour = equilibrium.contour
        probes = probe_grid(cut)
        for n, poles in pade_poles.items():
            target = _balayage_target(scheme, n, contour)
            counting = DiscreteMeasure.uniform(poles)
            difference = np.asarray(log_potential(counting, probes)) - np.asarray(
                log_potential(target, probes)
            )
            report.balayage_discrepancy[n] = float(np.max(np.abs(difference)))

    if scheme.kind == SchemeKind.REFLECTED_POLES:
        for n, poles in pade_poles.items():
            if n in best_poles_by_degree:
                report.fixed_point_gap[n] = _matched_gap(poles, best_poles_by_degree[n])
    return report


def _check(name: str, value: float, threshold: float, detail: str = "", above: bool = False) -> CheckResult:
    passed = bool(np.isfinite(value)) and (value >= threshold if above else value <= threshold)
    return CheckResult(name=name, value=float(value), threshold=threshold, passed=passed, detail=detail)


def verify_benchmark(
    cfg: Optional[OptimizerConfig] = None, truncation: int = Config.DEFAULT_TRUNCATION
) -> List[CheckResult]:
    """
    Two-path checks on the benchmark with branch points +-0.5.

    Args:
        cfg: Optimizer settings for the critical point search
        truncation: Laurent tail length N

    Returns:
        List[CheckResult]: Named checks with value, threshold and pass flag
    """
    checks: List[CheckResult] = []
    tracker = ProgressTracker(8, label="verify")

    annulus = green_equilibrium(Contour.circle(0.5, Config.DEFAULT_PANELS))
    checks.append(
        _check(
            "annulus_capacity",
            abs(annulus.capacity * np.log(2.0) - 1.0),
            5e-3,
            f"capacity {annulus.capacity:.6f}, exact {1 / np.log(2.0):.6f}",
        )
    )
    tracker.increment("annulus capacity")

    segment = np.linspace(-0.5, 0.5, 201).astype(complex)
    symmetric = solve_minimal_set([-0.5, 0.5])
    checks.append(
        _check("minset_segment", symmetric.cut.hausdorff(CutSystem([Arc(segment)])), 1e-2)
    )
    checks.append(
        _check("minset_segment_s_property", symmetric.s_property.max_mismatch, Config.S_PROPERTY_TOLERANCE)
    )
    shifted = solve_minimal_set([0.1, 0.6])
    geodesic = CutSystem([Arc(geodesic_arc(0.1, 0.6))])
    checks.append(_check("minset_geodesic", shifted.cut.hausdorff(geodesic), 1e-2))
    checks.append(
        _check("minset_geodesic_s_property", shifted.s_property.max_mismatch, Config.S_PROPERTY_TOLERANCE)
    )
    tracker.increment("minimal sets")

    spec = two_point_spec(0.5)
    tail = laurent_coefficients(spec, truncation)
    degrees = [6, 8, 10, 12, 14]
    critical = critical_sweep(tail, degrees, cfg)
    tracker.increment("critical points")

    rates = error_rate_study(spec, degrees, cfg, truncation, minimal_set=symmetric, critical=critical)
    last = rates.entries[-1]
    detail = f"root {last.root2:.6f}, predicted {rates.predicted_limit:.6f}"
    checks.append(_check("rate_law_2norm", last.gap2, 0.05, detail))
    checks.append(_check("rate_law_norm_agreement", _relative_gap(last.root_inf, last.root2), 0.10))
    tracker.increment("error rates")

    poles = {n: critical[n][0].poles for n in degrees if critical.get(n)}
    distribution = pole_distribution_study(poles, symmetric.cut, minimal_set_equilibrium(symmetric))
    by_degree = {e.degree: e for e in distribution.entries}
    if 12 in by_degree:
        checks.append(_check("pole_law_distance", by_degree[12].max_distance, 0.05))
    else:
        checks.append(_check("pole_law_distance", float("nan"), 0.05, "degree 12 did not converge"))
    if 6 in by_degree and 14 in by_degree:
        ratio = by_degree[6].potential_discrepancy / max(by_degree[14].potential_discrepancy, 1e-300)
        checks.append(_check("pole_law_discrepancy_ratio", ratio, 2.0, above=True))
    else:
        checks.append(_check("pole_law_discrepancy_ratio", float("nan"), 2.0, "missing degrees", above=True))
    tracker.increment("pole distribution")

    worst = 0.0
    for points in critical.values():
        for point in points:
            worst = max(worst, interpolation_certificate(tail, point.rational).max_residual)
    checks.append(
        _check("interpolation_certificate", worst, Config.CERTIFICATE_TOLERANCE * tail.coefficient_norm())
    )

    square = LaurentTail(np.eye(1, truncation, 1).ravel())
    closed_form = find_critical(square, 1, cfg)
    if closed_form:
        best = closed_form[0]
        pole_error = max(abs(abs(p) - 1 / np.sqrt(2.0)) for p in best.poles)
        checks.append(_check("closed_form_poles", pole_error, 1e-6))
        checks.append(_check("closed_form_objective", abs(best.objective - 0.75), 1e-9))
    else:
        checks.append(_check("closed_form_objective", float("nan"), 1e-9, "no start converged"))
    tracker.increment("certificates")

    classical = classical_pade(tail, 4).rational
    multipoint = multipoint_pade(spec, InterpolationScheme.at_infinity(), 4).rational
    checks.append(
        _check(
            "pade_cross_path",
            float(np.max(np.abs(classical.denominator - multipoint.denominator))),
            1e-10,
        )
    )
    rational = rational_spec([0.3, -0.4j], [1.0, 0.5])
    reproduced = classical_pade(laurent_coefficients(rational, truncation), 2).rational
    expected = np.polynomial.polynomial.polyfromroots([0.3, -0.4j])
    checks.append(
        _check("pade_rational_reproduction", float(np.max(np.abs(reproduced.denominator - expected))), 1e-12)
    )
    tracker.increment("Pade")

    dirac = DiscreteMeasure.dirac(0.5)
    swept = balayage_to_circle(dirac, Config.BALAYAGE_GRID)
    checks.append(_check("balayage_circle", abs(log_potential(dirac, 2.0) - log_potential(swept, 2.0)), 1e-6))
    omega = green_equilibrium(Contour.segment(-0.5, 0.5, 64), compute_residual=False)
    gap = reflection_balayage_gap(omega, Contour.segment(-0.5, 0.5, 128))
    checks.append(_check("reflection_balayage", gap, 1e-2, "64 panels swept onto 128"))
    tracker.increment("balayage")

    plate = Contour.segment(-0.5, 0.5, Config.DEFAULT_PANELS)
    empty = DiscreteMeasure(np.zeros(0), np.zeros(0))
    fekete = fekete_points(plate, empty, 64)
    linear = weighted_equilibrium(plate, empty).capacity
    checks.append(
        _check(
            "fekete_capacity",
            _relative_gap(fekete.corrected_capacity, linear),
            0.02,
            f"delta_64 {fekete.delta:.6f}, corrected {fekete.corrected_capacity:.6f}, linear {linear:.6f}",
        )
    )
    tracker.complete("verification finished")

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning("Benchmark checks failed: %s", ", ".join(failed))
    else:
        logger.info("All %d benchmark checks passed", len(checks))
    return checks
