"""Tests for the error-rate, pole-distribution and verification studies."""

import math

import numpy as np
import pytest

from extremal_lab.algfun import f1_spec, laurent_coefficients
from extremal_lab.asymptotics import (
    critical_sweep,
    error_rate_study,
    pade_vs_best_study,
    pole_distribution_study,
    probe_grid,
    sup_norm_error,
    verify_benchmark,
)
from extremal_lab.hardy import find_critical
from extremal_lab.minset import solve_minimal_set
from extremal_lab.models import (
    Arc,
    CriticalPoint,
    CutSystem,
    EndpointLabel,
    InterpolationScheme,
    RationalFn,
)


@pytest.fixture
def segment_cut():
    vertices = np.linspace(-0.5, 0.5, 201).astype(complex)
    return CutSystem([Arc(vertices, EndpointLabel.E0, EndpointLabel.E0)], [-0.5, 0.5])


def chebyshev(n):
    return 0.5 * np.cos(np.pi * (np.arange(n) + 0.5) / n) + 0j


class TestProbeGrid:
    """Probe points for potential discrepancies."""

    def test_stays_inside_disk(self):
        z = probe_grid(None)
        assert z.size > 0
        assert np.all(np.abs(z) <= 0.9 + 1e-12)

    def test_keeps_away_from_cut(self, segment_cut):
        z = probe_grid(segment_cut)
        assert np.all(segment_cut.distance(z) >= 0.1)


class TestPoleDistribution:
    """Metrics of pole sets against a cut."""

    def test_poles_on_cut(self, segment_cut):
        report = pole_distribution_study({4: chebyshev(4), 20: chebyshev(20)}, segment_cut)
        first, last = report.entries
        assert first.max_distance < 1e-12 and last.max_distance < 1e-12
        assert first.fraction_near == 1.0
        assert last.potential_discrepancy < first.potential_discrepancy
        assert last.distribution_deviation < 0.1
        assert report.monotone_discrepancy

    def test_distance_trend(self, segment_cut):
        poles = {2: np.array([0.3j, -0.3j]), 4: chebyshev(4) + 0.05j}
        report = pole_distribution_study(poles, segment_cut)
        assert report.entries[0].max_distance == pytest.approx(0.3)
        assert report.entries[0].fraction_near == 0.0
        assert report.monotone_distance

    def test_poles_outside_disk_are_counted(self, segment_cut):
        report = pole_distribution_study({4: [-0.4, -0.1, 0.2, 1.3]}, segment_cut)
        entry = report.entries[0]
        assert entry.outside_disk == 1
        assert math.isfinite(entry.potential_discrepancy)
        assert entry.max_distance == pytest.approx(0.8)

    def test_empty_pole_sets_are_skipped(self, segment_cut):
        report = pole_distribution_study({3: []}, segment_cut)
        assert report.entries == []
        assert report.probe_count > 0


class TestRationalFunctions:
    """Functions without branch points measure against their own poles."""

    def test_rate_study_is_degenerate(self, rational_two_poles, fast_optimizer):
        report = error_rate_study(rational_two_poles, [2], fast_optimizer, truncation=100)
        assert report.capacity == 0.0
        assert report.predicted_limit == 0.0
        assert report.degenerate
        assert report.entries[0].converged

    def test_missing_degree_is_reported(self, rational_two_poles):
        report = error_rate_study(rational_two_poles, [1], critical={1: []})
        entry = report.entries[0]
        assert not entry.converged
        assert math.isnan(entry.rho2)
        assert entry.message

    def test_pade_vs_best_uses_true_poles(self, rational_two_poles, fast_optimizer):
        report = pade_vs_best_study(
            rational_two_poles, InterpolationScheme.at_infinity(), [2], fast_optimizer
        )
        assert report.pade.entries[0].max_distance < 1e-10
        assert report.best is not None
        assert any("no branch cut" in s for s in report.skipped)

    def test_reflected_scheme_records_fixed_point_gap(self, rational_two_poles, fast_optimizer):
        scheme = InterpolationScheme.reflected_poles({})
        report = pade_vs_best_study(rational_two_poles, scheme, [2], fast_optimizer)
        assert report.fixed_point_gap[2] < 1e-8


class TestSweeps:
    """Degree sweeps and error norms."""

    def test_sweep_keeps_degree_order(self, square_tail, fast_optimizer):
        sweep = critical_sweep(square_tail, [2, 1], fast_optimizer)
        assert list(sweep) == [2, 1]
        assert sweep[1]

    def test_sweep_absorbs_failures(self, fast_optimizer):
        sweep = critical_sweep(laurent_coefficients(f1_spec(), 4), [3], fast_optimizer)
        assert sweep == {3: []}

    def test_sup_norm_error(self, square_tail):
        point = CriticalPoint(RationalFn([0.0], [0.0, 1.0]), objective=1.0, gradient_norm=0.0)
        assert sup_norm_error(square_tail, point) == pytest.approx(1.0)


@pytest.mark.slow
class TestBenchmark:
    """End-to-end checks on the benchmarks."""

    def test_verify_benchmark_passes(self):
        checks = verify_benchmark()
        failed = [c.name for c in checks if not c.passed]
        assert failed == []

    def test_f1_poles_follow_minimal_set(self):
        """Best poles at degrees 12 and 16 lie near the minimal set of z1..z4."""
        spec = f1_spec()
        tail = laurent_coefficients(spec, 100)
        cut = solve_minimal_set(spec.branch_points).cut
        for n in (12, 16):
            best = find_critical(tail, n)[0]
            assert np.max(cut.distance(best.poles)) <= 0.1
