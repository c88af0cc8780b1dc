"""Double interpolation at reflected poles."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..config import Config
from ..models import CertificateReport, LaurentTail, RationalFn
from ..pade import poles_of

logger = logging.getLogger(__name__)


def _cluster(poles: np.ndarray, radius: float = 1e-6) -> List[Tuple[complex, int]]:
    """Distinct poles with multiplicities."""
    groups: List[Tuple[complex, int]] = []
    for pole in poles:
        for i, (center, count) in enumerate(groups):
            if abs(pole - center) <= radius:
                groups[i] = ((center * count + pole) / (count + 1), count + 1)
                break
        else:
            groups.append((complex(pole), 1))
    return groups


def interpolation_certificate(
    tail: LaurentTail, r: RationalFn, tolerance: Optional[float] = None
) -> CertificateReport:
    """
    Residuals of f - r and its derivatives at the reflection 1/conj(xi) of each pole.

    A pole of multiplicity k is checked through derivative order 2k - 1; the
    residual pairs hold orders (0, 1), (2, 3) and so on. Poles at the origin
    reflect to infinity and are skipped.

    Args:
        tail: Laurent tail of f
        r: Candidate critical point
        tolerance: Base tolerance, default ``CERTIFICATE_TOLERANCE * ||f||``

    Returns:
        CertificateReport: Residual pairs, nodes and the (widened) tolerance
    """
    base = tolerance if tolerance is not None else Config.CERTIFICATE_TOLERANCE * tail.coefficient_norm()
    report = CertificateReport(tolerance=base)
    for pole, multiplicity in _cluster(poles_of(r)):
        if pole == 0:
            logger.debug("Pole at the origin reflects to infinity; skipped")
            continue
        node = 1.0 / np.conj(pole)
        for order in range(0, 2 * multiplicity, 2):
            value = complex(tail.derivative(node, order) - r.derivative(node, order))
            slope = complex(tail.derivative(node, order + 1) - r.derivative(node, order + 1))
            report.residuals.append((value, slope))
        report.nodes.append(complex(node))
        widened = abs(pole) > 0.98
        report.widened.append(widened)
        if widened:
            report.tolerance = max(report.tolerance, base / (1 - abs(pole)))
            logger.warning("Pole %s near the circle; certificate tolerance widened", format(pole, ".6g"))
    return report
