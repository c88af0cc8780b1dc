"""Tests for Green functions, equilibria, balayage and Fekete points."""

import numpy as np
import pytest

from extremal_lab.exceptions import GreenPoleError, PreconditionError
from extremal_lab.models import Contour, DiscreteMeasure
from extremal_lab.potential import (
    balayage_onto_contour,
    balayage_to_circle,
    circle_grid,
    fekete_points,
    green_disk,
    green_equilibrium,
    green_exterior_disk,
    green_gradient,
    green_potential,
    log_potential,
    reflect_measure,
    reflection_balayage_gap,
    spherical_potential,
    weighted_equilibrium,
)

EMPTY = DiscreteMeasure(np.zeros(0), np.zeros(0))


class TestKernels:
    """Point kernels."""

    def test_green_disk_at_origin(self):
        assert green_disk(0.0, 0.5) == pytest.approx(np.log(2.0))

    def test_green_disk_is_symmetric(self):
        z, u = 0.3 + 0.2j, -0.4 + 0.1j
        assert green_disk(z, u) == pytest.approx(green_disk(u, z))

    def test_green_disk_vanishes_on_circle(self):
        z = np.exp(1j * np.linspace(0, 2 * np.pi, 9))
        assert np.max(np.abs(green_disk(z, 0.3 - 0.2j))) < 1e-14

    def test_green_disk_pole(self):
        with pytest.raises(GreenPoleError):
            green_disk(0.2, 0.2)

    def test_green_exterior_disk_vanishes_on_inner_circle(self):
        z = 0.5 * np.exp(1j * np.linspace(0, 2 * np.pi, 9))
        assert np.max(np.abs(green_exterior_disk(z, 1.5 + 0.5j, 0.5))) < 1e-14

    def test_log_potential_of_dirac(self):
        assert log_potential(DiscreteMeasure.dirac(0.0), 2.0) == pytest.approx(-np.log(2.0))
        assert log_potential(DiscreteMeasure.dirac(0.0), 0.0) == np.inf

    def test_spherical_potential_outside_disk(self):
        """Masses outside the disk use -log|1 - z/u|."""
        mu = DiscreteMeasure.dirac(2.0)
        assert spherical_potential(mu, 1.0) == pytest.approx(-np.log(0.5))


class TestGreenEquilibrium:
    """Condenser capacities."""

    def test_annulus_capacity(self, half_circle):
        """Circle of radius 1/2 against the unit circle: cap = 1/log 2."""
        result = green_equilibrium(half_circle)
        assert abs(result.capacity * np.log(2.0) - 1.0) < 5e-3
        assert result.equilibrium.mass == pytest.approx(1.0)
        assert np.all(result.equilibrium.weights >= 0)

    def test_uniform_density_on_circle(self, half_circle):
        weights = green_equilibrium(half_circle).equilibrium.weights
        assert np.max(weights) - np.min(weights) < 1e-8

    def test_exterior_domain(self):
        """Circle of radius 0.9 in {|z| > 0.5}: cap = 1/log 1.8."""
        result = green_equilibrium(Contour.circle(0.9, 256), exterior_radius=0.5)
        assert result.capacity * np.log(1.8) == pytest.approx(1.0, rel=5e-3)

    def test_potential_is_constant_on_plate(self, benchmark_segment):
        result = green_equilibrium(benchmark_segment)
        values = green_potential(result, np.linspace(-0.4, 0.4, 9) + 0j)
        assert np.max(np.abs(values - result.robin_constant)) < 2e-2 * result.robin_constant

    def test_gradient_matches_finite_difference(self, benchmark_segment):
        result = green_equilibrium(benchmark_segment)
        z, h = 0.2 + 0.6j, 1e-6
        dx = (green_potential(result, z + h) - green_potential(result, z - h)) / (2 * h)
        dy = (green_potential(result, z + 1j * h) - green_potential(result, z - 1j * h)) / (2 * h)
        assert green_gradient(result, z) == pytest.approx(0.5 * (dx - 1j * dy), abs=1e-6)

    def test_capacity_is_symmetric_in_the_plates(self, half_circle):
        """Swapping the plates of the annulus 1/2 < |z| < 1 keeps the capacity."""
        inner = green_equilibrium(half_circle).capacity
        swapped = green_equilibrium(Contour.circle(1.0, 256), exterior_radius=0.5).capacity
        assert swapped == pytest.approx(inner, rel=5e-3)

    def test_plate_must_lie_in_disk(self):
        with pytest.raises(PreconditionError):
            green_equilibrium(Contour.circle(1.0, 64))

    def test_log_and_green_capacities_are_bracketed(self, benchmark_segment):
        """|1/cap(K, T) + log cap(K)| is at most max |log|z - u|| over K x T."""
        green = green_equilibrium(benchmark_segment).capacity
        log_cap = weighted_equilibrium(benchmark_segment, EMPTY).capacity
        z = np.array([-0.5, 0.5, 0.0])
        u = np.exp(1j * np.linspace(0, 2 * np.pi, 64))
        bound = np.max(np.abs(np.log(np.abs(z[:, None] - u[None, :]))))
        assert abs(1.0 / green + np.log(log_cap)) <= bound


class TestWeightedEquilibrium:
    """Logarithmic capacity in an external field."""

    def test_segment_log_capacity(self, benchmark_segment):
        """A segment of length 1 has logarithmic capacity 1/4."""
        result = weighted_equilibrium(benchmark_segment, EMPTY)
        assert result.capacity == pytest.approx(0.25, rel=2e-2)

    def test_circle_with_field_at_origin(self):
        result = weighted_equilibrium(Contour.circle(0.4, 256), DiscreteMeasure.dirac(0.0))
        assert result.capacity == pytest.approx(0.4, rel=5e-3)
        weights = result.equilibrium.weights
        assert np.max(weights) - np.min(weights) < 1e-8

    def test_uniform_field_on_circle_matches_origin(self, benchmark_segment):
        """Uniform mass on T has the same spherical potential in the disk as a mass at 0."""
        nu = DiscreteMeasure(circle_grid(64), np.full(64, 1.0 / 64))
        uniform = weighted_equilibrium(benchmark_segment, nu).capacity
        origin = weighted_equilibrium(benchmark_segment, DiscreteMeasure.dirac(0.0)).capacity
        assert uniform == pytest.approx(origin, rel=1e-2)
        assert uniform == pytest.approx(0.25, rel=2e-2)

    def test_field_outside_disk_rejected(self, benchmark_segment):
        with pytest.raises(PreconditionError):
            weighted_equilibrium(benchmark_segment, DiscreteMeasure.dirac(2.0))


class TestBalayage:
    """Sweeping measures onto the circle and onto plates."""

    def test_circle_balayage_preserves_exterior_potential(self):
        dirac = DiscreteMeasure.dirac(0.5)
        swept = balayage_to_circle(dirac, 512)
        assert swept.mass == pytest.approx(1.0)
        assert abs(log_potential(dirac, 2.0) - log_potential(swept, 2.0)) < 1e-6

    def test_origin_sweeps_to_uniform(self):
        swept = balayage_to_circle(DiscreteMeasure.dirac(0.0), 64)
        assert np.allclose(swept.weights, 1.0 / 64)

    def test_mass_on_circle_rejected(self):
        with pytest.raises(PreconditionError):
            balayage_to_circle(DiscreteMeasure.dirac(1.0))

    def test_reflection_is_involutive(self):
        mu = DiscreteMeasure([0.5, -0.2 + 0.3j], [0.25, 0.75])
        twice = reflect_measure(reflect_measure(mu))
        assert np.allclose(twice.points, mu.points)
        assert np.allclose(twice.weights, mu.weights)

    def test_origin_cannot_be_reflected(self):
        with pytest.raises(PreconditionError):
            reflect_measure(DiscreteMeasure.dirac(0.0))

    def test_measure_on_circle_is_fixed(self):
        nodes = circle_grid(64)
        mu = DiscreteMeasure((1 - 1e-9) * nodes[::4], np.linspace(1.0, 2.0, 16) / 24.0)
        swept = balayage_to_circle(mu, 64)
        expected = np.zeros(64)
        expected[::4] = mu.weights
        assert np.allclose(swept.weights, expected, atol=1e-8)

    def test_reflected_equilibrium_sweeps_back(self):
        """The Green equilibrium is the balayage of its reflection."""
        omega = green_equilibrium(Contour.segment(-0.5, 0.5, 64), compute_residual=False)
        recovered = balayage_onto_contour(reflect_measure(omega.equilibrium), omega.contour)
        assert np.max(np.abs(recovered.weights - omega.equilibrium.weights)) < 1e-8

    def test_reflection_gap_across_discretizations(self):
        """Sweeping onto a finer grid agrees with the equilibrium solved there."""
        omega = green_equilibrium(Contour.segment(-0.5, 0.5, 64), compute_residual=False)
        gap = reflection_balayage_gap(omega, Contour.segment(-0.5, 0.5, 128))
        assert 0 <= gap < 1e-2

    def test_reflection_gap_needs_single_arc(self):
        omega = green_equilibrium(Contour.segment(-0.5, 0.5, 32), compute_residual=False)
        two_arcs = Contour.concatenate(
            [Contour.segment(-0.5, -0.1, 16), Contour.segment(0.1, 0.5, 16)]
        )
        with pytest.raises(PreconditionError):
            reflection_balayage_gap(omega, two_arcs)


class TestFeketePoints:
    """Discrete capacity estimates."""

    def test_matches_linear_system_capacity(self, benchmark_segment):
        fekete = fekete_points(benchmark_segment, EMPTY, 64)
        linear = weighted_equilibrium(benchmark_segment, EMPTY).capacity
        assert abs(fekete.corrected_capacity - linear) / linear <= 0.02
        assert fekete.points.size == 64
        assert np.unique(np.round(fekete.points, 12)).size == 64

    def test_two_points_take_the_endpoints(self):
        fekete = fekete_points(Contour.segment(-1.0, 1.0, 32), EMPTY, 2)
        assert np.allclose(np.sort(fekete.points.real), [-1.0, 1.0])
        assert fekete.delta == pytest.approx(2.0)

    def test_points_on_circle_are_equally_spaced(self):
        fekete = fekete_points(Contour.circle(1.0 - 1e-3, 64), EMPTY, 4)
        angles = np.sort(np.angle(fekete.points) % (2 * np.pi))
        gaps = np.diff(np.append(angles, angles[0] + 2 * np.pi))
        assert np.allclose(gaps, np.pi / 2, atol=2 * np.pi / 128)

    def test_needs_two_points(self, benchmark_segment):
        with pytest.raises(PreconditionError):
            fekete_points(benchmark_segment, EMPTY, 1)
