"""Tests for function specifications and Laurent tails."""

from fractions import Fraction

import numpy as np
import pytest
from scipy.special import comb

from extremal_lab.algfun import (
    evaluate_principal,
    f1_spec,
    f2_spec,
    h2bar_norm,
    laurent_coefficients,
    rational_spec,
)
from extremal_lab.exceptions import AmbiguousBranchError, PoleError, PreconditionError
from extremal_lab.models import BranchFactor, FunctionSpec, LaurentTail, Term


class TestEvaluatePrincipal:
    """Principal branch normalized at infinity."""

    def test_matches_closed_form(self, markov_spec):
        """1/sqrt(z^2 - 1/4) on the real axis beyond the branch points."""
        z = np.array([0.8, 1.5, 3.0])
        expected = 1.0 / np.sqrt(z**2 - 0.25)
        assert np.allclose(evaluate_principal(markov_spec, z), expected, rtol=1e-14)

    def test_behaves_like_limit_over_z(self):
        spec = f1_spec()
        z = 1e6
        assert abs(z * evaluate_principal(spec, z) - 2.0) < 1e-5

    def test_conjugate_symmetry(self, markov_spec):
        z = 0.7 + 0.4j
        assert markov_spec.is_conjugate_symmetric
        mirrored = evaluate_principal(markov_spec, np.conj(z))
        assert abs(mirrored - np.conj(evaluate_principal(markov_spec, z))) < 1e-14

    def test_inside_branch_radius_is_ambiguous(self, markov_spec):
        with pytest.raises(AmbiguousBranchError):
            evaluate_principal(markov_spec, 0.3)

    def test_pole_of_rational_part(self, rational_two_poles):
        with pytest.raises(PoleError):
            evaluate_principal(rational_two_poles, 0.3)


class TestFunctionSpec:
    """Validation of specification data."""

    def test_exponents_must_sum_to_minus_one(self):
        with pytest.raises(ValueError):
            Term([BranchFactor(0.5, Fraction(-1, 2))], 1.0)

    def test_center_outside_disk_rejected(self):
        with pytest.raises(ValueError):
            BranchFactor(1.2, Fraction(-1, 2))

    def test_empty_spec_rejected(self):
        with pytest.raises(ValueError):
            FunctionSpec()

    def test_preset_branch_points(self):
        assert len(f1_spec().branch_points) == 4
        assert len(f1_spec(include_z5=True).branch_points) == 5
        assert len(f2_spec().branch_points) == 5

    def test_pole_only_spec_has_no_branch_points(self, rational_two_poles):
        assert rational_two_poles.branch_points == []
        assert rational_two_poles.branch_radius == 0.0


class TestLaurentCoefficients:
    """FFT extraction of c_0..c_{N-1}."""

    def test_f1_normalization(self):
        """c_0 is the limit of z f(z), which is 2 for f1."""
        tail = laurent_coefficients(f1_spec(), 100)
        assert tail.truncation_length == 100
        assert abs(tail.coefficients[0] - 2.0) < 1e-12

    def test_pole_only_spec_is_geometric(self):
        tail = laurent_coefficients(rational_spec([0.5], [1.0]), 40)
        assert np.allclose(tail.coefficients, 0.5 ** np.arange(40), atol=1e-13)

    def test_markov_coefficients(self, markov_tail):
        """c_{2k} = C(2k, k) (1/16)^k and odd coefficients vanish."""
        k = np.arange(20)
        expected = comb(2 * k, k) * (1.0 / 16.0) ** k
        assert np.allclose(markov_tail.coefficients[0:40:2], expected, atol=1e-13)
        assert np.max(np.abs(markov_tail.coefficients[1:40:2])) < 1e-13

    def test_zero_truncation_rejected(self, markov_spec):
        with pytest.raises(PreconditionError):
            laurent_coefficients(markov_spec, 0)

    def test_sampling_radius_must_exceed_singularities(self, markov_spec):
        with pytest.raises(PreconditionError):
            laurent_coefficients(markov_spec, 10, sampling_radius=0.4)

    def test_too_few_samples_rejected(self, markov_spec):
        with pytest.raises(PreconditionError):
            laurent_coefficients(markov_spec, 10, samples=20)


class TestLaurentTail:
    """Tail helpers."""

    def test_h2bar_norm_uses_arclength(self):
        tail = LaurentTail([3.0, 4.0])
        assert tail.coefficient_norm() == pytest.approx(5.0)
        assert h2bar_norm(tail) == pytest.approx(5.0 * np.sqrt(2 * np.pi))

    def test_evaluate_matches_spec(self, markov_spec, markov_tail):
        z = 1.1 * np.exp(1j * np.linspace(0, 2 * np.pi, 7))
        assert np.allclose(markov_tail.evaluate(z), evaluate_principal(markov_spec, z), atol=1e-12)

    def test_rotation_moves_coefficients(self, markov_tail):
        alpha = 0.4
        rotated = markov_tail.rotated(alpha)
        k = np.arange(markov_tail.truncation_length)
        assert np.allclose(rotated.coefficients, markov_tail.coefficients * np.exp(1j * alpha * k))
        assert not rotated.is_real()
        assert markov_tail.is_real()

    def test_empty_tail_rejected(self):
        with pytest.raises(ValueError):
            LaurentTail([])
