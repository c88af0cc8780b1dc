"""Shared fixtures: benchmark functions, tails and plates."""

import numpy as np
import pytest

from extremal_lab.algfun import laurent_coefficients, rational_spec, two_point_spec
from extremal_lab.config import OptimizerConfig
from extremal_lab.models import Contour, LaurentTail


@pytest.fixture
def markov_spec():
    """1/sqrt((z - 0.5)(z + 0.5)), branch points +-0.5."""
    return two_point_spec(0.5)


@pytest.fixture
def markov_tail(markov_spec):
    return laurent_coefficients(markov_spec, 100)


@pytest.fixture
def rational_two_poles():
    return rational_spec([0.3, -0.4j], [1.0, 0.5])


@pytest.fixture
def square_tail():
    """Tail of z**-2."""
    return LaurentTail(np.eye(1, 100, 1).ravel())


@pytest.fixture
def fast_optimizer():
    return OptimizerConfig(multistart=4, seed=7)


@pytest.fixture
def half_circle():
    return Contour.circle(0.5, 256)


@pytest.fixture
def benchmark_segment():
    return Contour.segment(-0.5, 0.5, 256)
