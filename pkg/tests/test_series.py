"""Tests for Laurent tail and rational function helpers."""

import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest

from extremal_lab.series import (
    evaluate_tail,
    rational_derivative,
    rational_tail,
    tail_derivative,
    tail_numerator,
)


def test_single_pole_tail_is_geometric():
    tail = rational_tail([1.0], [-0.5, 1.0], 30)
    assert np.allclose(tail, 0.5 ** np.arange(30))


def test_constant_denominator_gives_zero_tail():
    assert not np.any(rational_tail([1.0], [1.0], 5))


def test_improper_fraction_rejected():
    with pytest.raises(ValueError):
        rational_tail([0.0, 1.0], [-0.5, 1.0], 5)


def test_evaluate_tail_matches_rational():
    numerator, denominator = np.array([0.2, 1.0]), npoly.polyfromroots([0.3, -0.4j])
    z = 1.2 * np.exp(1j * np.linspace(0, 2 * np.pi, 9))
    tail = rational_tail(numerator, denominator, 200)
    expected = npoly.polyval(z, numerator) / npoly.polyval(z, denominator)
    assert np.allclose(evaluate_tail(tail, z), expected, atol=1e-14)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_derivatives_agree(order):
    """Tail and rational derivatives of the same function coincide."""
    numerator, denominator = np.array([1.0, 0.5]), npoly.polyfromroots([0.5, 0.25j])
    tail = rational_tail(numerator, denominator, 400)
    z = np.array([2.0, -1.5 + 1.0j])
    assert np.allclose(
        tail_derivative(tail, z, order),
        rational_derivative(numerator, denominator, z, order),
        rtol=1e-12,
    )


def test_tail_numerator_recovers_numerator():
    numerator, denominator = np.array([0.3, -1.0, 2.0]), npoly.polyfromroots([0.1, 0.2, -0.6])
    tail = rational_tail(numerator, denominator, 10)
    assert np.allclose(tail_numerator(denominator, tail), numerator, atol=1e-14)
