"""Tests for classical and multipoint Pade approximants."""

import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest

from extremal_lab.algfun import laurent_coefficients
from extremal_lab.exceptions import (
    DefectivePadeError,
    PreconditionError,
    QuadratureRadiusError,
)
from extremal_lab.models import InterpolationScheme, LaurentTail, RationalFn, SchemeKind
from extremal_lab.pade import (
    classical_pade,
    multipoint_pade,
    pade_sweep,
    poles_of,
    quadrature_radius,
    tail_singular_radius,
)


class TestClassicalPade:
    """Hankel-system approximants at infinity."""

    def test_reproduces_rational_input(self, rational_two_poles):
        tail = laurent_coefficients(rational_two_poles, 100)
        result = classical_pade(tail, 2)
        assert not result.defective
        assert np.max(np.abs(result.rational.tail(100) - tail.coefficients)) < 1e-12
        poles = np.sort_complex(poles_of(result.rational))
        assert np.allclose(poles, np.sort_complex([0.3, -0.4j]), atol=1e-12)

    def test_markov_poles_are_real_and_inside_segment(self, markov_tail):
        poles = poles_of(classical_pade(markov_tail, 6).rational)
        assert poles.size == 6
        assert np.max(np.abs(poles.imag)) < 1e-10
        assert np.all(np.abs(poles.real) < 0.5)

    def test_markov_zeros_interlace_poles(self, markov_tail):
        rational = classical_pade(markov_tail, 4).rational
        poles = np.sort(poles_of(rational).real)
        zeros = npoly.polyroots(np.trim_zeros(rational.numerator, "b"))
        assert zeros.size == 3
        assert np.max(np.abs(zeros.imag)) < 1e-10
        zeros = np.sort(zeros.real)
        assert np.all(poles[:-1] < zeros) and np.all(zeros < poles[1:])

    def test_poles_gather_on_segment_as_degree_grows(self, markov_tail):
        fractions = []
        for n in range(2, 9):
            poles = poles_of(classical_pade(markov_tail, n).rational)
            distance = np.abs(poles - np.clip(poles.real, -0.5, 0.5))
            fractions.append(np.mean(distance <= 0.05))
        assert all(b >= a for a, b in zip(fractions, fractions[1:]))
        assert fractions[4:] == [1.0, 1.0, 1.0]

    def test_interpolation_conditions_hold(self, markov_tail):
        result = classical_pade(markov_tail, 4)
        assert result.interpolation_residuals.size == 4
        assert np.max(result.interpolation_residuals) < 1e-12

    def test_defective_entry_is_flagged(self):
        """A one-pole tail has a singular degree-2 Hankel matrix."""
        tail = LaurentTail(0.5 ** np.arange(20))
        assert classical_pade(tail, 2).defective

    def test_defective_entry_raises_when_strict(self):
        tail = LaurentTail(0.5 ** np.arange(20))
        with pytest.raises(DefectivePadeError):
            classical_pade(tail, 2, strict=True)

    @pytest.mark.parametrize("n, length", [(0, 10), (6, 10)])
    def test_preconditions(self, n, length):
        with pytest.raises(PreconditionError):
            classical_pade(LaurentTail(np.ones(length)), n)


class TestMultipointPade:
    """Approximants from contour moments."""

    def test_agrees_with_classical_at_infinity(self, markov_spec, markov_tail):
        classical = classical_pade(markov_tail, 4).rational
        multipoint = multipoint_pade(markov_spec, InterpolationScheme.at_infinity(), 4)
        assert multipoint.scheme == SchemeKind.AT_INFINITY
        assert np.max(np.abs(multipoint.rational.denominator - classical.denominator)) < 1e-10
        assert np.max(np.abs(multipoint.rational.numerator - classical.numerator)) < 1e-10

    def test_reproduces_rational_spec(self, rational_two_poles):
        result = multipoint_pade(rational_two_poles, InterpolationScheme.at_infinity(), 2)
        z = 1.5 * np.exp(1j * np.linspace(0, 2 * np.pi, 11))
        expected = RationalFn.from_poles_residues([0.3, -0.4j], [1.0, 0.5]).evaluate(z)
        assert np.max(np.abs(result.rational.evaluate(z) - expected)) < 1e-12

    def test_interpolates_at_reflected_poles(self, markov_spec):
        scheme = InterpolationScheme.reflected_poles({2: [0.3, -0.3]})
        result = multipoint_pade(markov_spec, scheme, 2)
        assert result.scheme == SchemeKind.REFLECTED_POLES
        assert 0.5 < result.quadrature_radius < 10 / 3
        assert np.max(result.interpolation_residuals) < 1e-8

    def test_scheme_point_on_circle_rejected(self, markov_spec):
        scheme = InterpolationScheme.explicit({1: [1.0, 2.0]})
        with pytest.raises(PreconditionError):
            multipoint_pade(markov_spec, scheme, 1)

    def test_scheme_point_inside_disk_rejected(self):
        with pytest.raises(ValueError):
            InterpolationScheme.explicit({1: [0.5, 2.0]})


class TestHelpers:
    """Poles, radii and sweeps."""

    def test_constant_denominator_has_no_poles(self):
        with pytest.raises(PreconditionError):
            poles_of(RationalFn([1.0], [1.0]))

    def test_quadrature_radius_needs_singularities_inside_disk(self):
        with pytest.raises(QuadratureRadiusError):
            quadrature_radius(1.0, [])

    def test_quadrature_radius_separates(self):
        radius = quadrature_radius(0.5, [2.0, -3.0])
        assert 0.5 < radius < 2.0

    def test_double_pole(self):
        poles = poles_of(RationalFn([1.0], npoly.polyfromroots([0.3, 0.3])))
        assert np.allclose(poles, [0.3, 0.3], atol=1e-6)

    def test_roots_rebuild_the_denominator(self):
        rng = np.random.default_rng(5)
        roots = 0.9 * np.sqrt(rng.uniform(size=8)) * np.exp(2j * np.pi * rng.uniform(size=8))
        q = npoly.polyfromroots(roots)
        rebuilt = npoly.polyfromroots(poles_of(RationalFn([1.0], q)))
        assert np.allclose(rebuilt, q, atol=1e-8)

    def test_singular_radius_estimate(self, markov_tail):
        assert tail_singular_radius(markov_tail) == pytest.approx(0.5, abs=0.05)

    def test_singular_radius_ignores_roundoff_coefficients(self, markov_tail):
        """Scheme points just outside the branch radius still get a quadrature circle."""
        radius = quadrature_radius(tail_singular_radius(markov_tail), [0.6])
        assert 0.5 < radius < 0.6

    def test_sweep_maps_failures_to_none(self, markov_tail):
        results = pade_sweep(markov_tail, InterpolationScheme.at_infinity(), [2, 4, 60])
        assert list(results) == [2, 4, 60]
        assert results[2] is not None and results[4] is not None
        assert results[60] is None
