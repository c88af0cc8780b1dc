"""Tests for the projected squared-error functional and the critical point search."""

import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest

from extremal_lab.config import OptimizerConfig
from extremal_lab.exceptions import PreconditionError
from extremal_lab.hardy import (
    CriticalPointSearch,
    concentrated_objective,
    find_critical,
    interpolation_certificate,
    project,
    takenaka_malmquist,
)
from extremal_lab.models import CertificateReport, LaurentTail, RationalFn

ROOT_HALF = 1.0 / np.sqrt(2.0)


@pytest.fixture
def search_config():
    return OptimizerConfig(multistart=16, seed=3)


class TestProjection:
    """Best numerator for a fixed denominator."""

    def test_square_tail_closed_form(self, square_tail):
        """||z**-2 - a/(z - xi)||**2 = 1 - (1 - xi**2) xi**2."""
        projection = project(square_tail, np.array([-ROOT_HALF, 1.0]))
        assert projection.value == pytest.approx(0.75, abs=1e-14)

    def test_exact_denominator_leaves_no_residual(self):
        r = RationalFn.from_poles_residues([0.3, -0.4j], [1.0, 0.5])
        projection = project(LaurentTail(r.tail(100)), r.denominator)
        assert projection.value < 1e-24
        assert np.allclose(projection.numerator, r.numerator, atol=1e-12)

    def test_basis_is_orthonormal(self):
        basis = takenaka_malmquist(np.array([0.3, -0.5 + 0.2j, 0.6j]), 400)
        gram = basis.conj() @ basis.T
        assert np.allclose(gram, np.eye(3), atol=1e-12)

    def test_rotation_invariance(self, markov_tail):
        """Rotating the tail and the poles together keeps the error."""
        alpha = 0.7
        roots = np.array([0.2 + 0.1j, -0.3])
        plain = project(markov_tail, npoly.polyfromroots(roots)).value
        rotated = project(markov_tail.rotated(alpha), npoly.polyfromroots(np.exp(1j * alpha) * roots))
        assert rotated.value == pytest.approx(plain, abs=1e-12)


class TestConcentratedObjective:
    """Value and gradient in denominator parameters."""

    @pytest.mark.parametrize("real", [True, False])
    def test_analytic_gradient_matches_differences(self, markov_tail, real):
        q = npoly.polyfromroots([0.2, -0.35])
        value, analytic = concentrated_objective(markov_tail, q, "analytic", real=real)
        same, numeric = concentrated_objective(markov_tail, q, "finite_difference", real=real)
        assert value == same
        assert np.allclose(analytic, numeric, rtol=1e-5, atol=1e-9)

    def test_barrier(self, markov_tail):
        q = npoly.polyfromroots([0.9999])
        value, grad = concentrated_objective(markov_tail, q, max_pole_modulus=0.999)
        assert value == np.inf
        assert np.all(np.isnan(grad))


class TestFindCritical:
    """Multistart search."""

    def test_square_tail_closed_form(self, square_tail, search_config):
        """z**-2 at degree 1 has two critical points with poles +-1/sqrt(2)."""
        points = find_critical(square_tail, 1, search_config)
        assert len(points) == 2
        poles = np.sort(np.concatenate([p.poles for p in points]).real)
        assert np.allclose(poles, [-ROOT_HALF, ROOT_HALF], atol=1e-6)
        assert all(abs(p.objective - 0.75) <= 1e-9 for p in points)
        assert all(p.irreducible for p in points)

    def test_certificate_vanishes_at_closed_form_point(self, square_tail, search_config):
        best = find_critical(square_tail, 1, search_config)[0]
        report = interpolation_certificate(square_tail, best.rational)
        assert report.passed
        assert report.max_residual < 1e-9

    def test_recovers_single_pole(self, search_config):
        tail = LaurentTail(0.5 ** np.arange(100))
        best = find_critical(tail, 1, search_config)[0]
        assert best.poles[0] == pytest.approx(0.5, abs=1e-6)
        assert best.objective < 1e-12

    def test_objective_never_increases_within_a_start(self, markov_tail, fast_optimizer):
        search = CriticalPointSearch(markov_tail, 2, fast_optimizer)
        search.run()
        assert search.records
        for start in {r.start for r in search.records}:
            values = [r.objective for r in search.records if r.start == start]
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_few_starts_still_find_square_tail_points(self, square_tail, fast_optimizer):
        """Stopping at the attainable gradient level keeps exact critical points."""
        search = CriticalPointSearch(square_tail, 1, fast_optimizer)
        points = search.run()
        assert points
        for point in points:
            assert abs(abs(point.poles[0]) - ROOT_HALF) < 1e-6
            assert point.objective == pytest.approx(0.75, abs=1e-9)

    @pytest.mark.parametrize("seed", range(6))
    def test_default_config_finds_both_square_tail_points(self, square_tail, seed):
        points = find_critical(square_tail, 1, OptimizerConfig(seed=seed))
        poles = np.sort(np.concatenate([p.poles for p in points]).real)
        assert np.allclose(poles, [-ROOT_HALF, ROOT_HALF], atol=1e-6)

    def test_threshold_has_a_floor(self, square_tail):
        search = CriticalPointSearch(square_tail, 1, OptimizerConfig(stationarity_tol=1e-20))
        assert search.threshold >= 1e-8 * square_tail.coefficient_norm() ** 2

    def test_failed_certificate_drops_the_point(self, mocker, search_config):
        failing = CertificateReport(residuals=[(1.0, 0.0)], nodes=[2.0], tolerance=1e-7, widened=[False])
        mocker.patch("extremal_lab.hardy.optimizer.interpolation_certificate", return_value=failing)
        search = CriticalPointSearch(LaurentTail(0.5 ** np.arange(100)), 1, search_config)
        assert search.run() == []
        assert len(search.failures) == len(search.starts())

    def test_rotating_the_function_rotates_the_poles(self, markov_tail, fast_optimizer):
        alpha = np.pi / 2
        plain = find_critical(markov_tail, 2, fast_optimizer)[0]
        turned = find_critical(markov_tail.rotated(alpha), 2, fast_optimizer)[0]
        assert turned.objective == pytest.approx(plain.objective, rel=1e-8, abs=1e-14)
        expected = np.exp(1j * alpha) * plain.poles
        cost = np.abs(turned.poles[:, None] - expected[None, :])
        assert np.max(np.min(cost, axis=1)) <= fast_optimizer.dedup_radius

    def test_trust_rule_converges(self, markov_tail):
        config = OptimizerConfig(multistart=4, seed=1, step_rule="trust")
        points = find_critical(markov_tail, 2, config)
        assert points
        assert interpolation_certificate(markov_tail, points[0].rational).passed

    def test_results_sorted_by_objective(self, markov_tail, fast_optimizer):
        points = find_critical(markov_tail, 3, fast_optimizer)
        objectives = [p.objective for p in points]
        assert objectives == sorted(objectives)

    @pytest.mark.parametrize("n, length", [(0, 100), (2, 4)])
    def test_preconditions(self, n, length):
        with pytest.raises(PreconditionError):
            CriticalPointSearch(LaurentTail(np.ones(length)), n)


class TestCertificate:
    """Double interpolation at reflected poles."""

    def test_non_critical_function_fails(self, square_tail):
        report = interpolation_certificate(square_tail, RationalFn([0.5], [-0.5, 1.0]))
        assert not report.passed
        assert report.nodes == [pytest.approx(2.0)]

    def test_tolerance_scales_with_norm(self, markov_tail):
        report = interpolation_certificate(markov_tail, RationalFn([1.0], [0.0, 0.0, 1.0]))
        assert report.tolerance == pytest.approx(1e-7 * markov_tail.coefficient_norm())
        assert report.residuals == []
