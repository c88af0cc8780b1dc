"""Multistart descent and quasi-Newton search for critical points."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
import numpy.polynomial.polynomial as npoly
from scipy.optimize import linear_sum_assignment

from ..config import Config, OptimizerConfig
from ..exceptions import ExtremalLabError, PreconditionError
from ..models import CriticalPoint, IterationRecord, LaurentTail, RationalFn
from ..pade import classical_pade, poles_of
from .certificate import interpolation_certificate
from .objective import (
    concentrated_objective,
    denominator_from_parameters,
    parameters_from_denominator,
    project,
)

logger = logging.getLogger(__name__)

ARMIJO = 1e-4


class CriticalPointSearch:
    """
    Critical points of the squared error for one tail and one degree.

    Every start runs a short gradient descent (Armijo backtracking or a
    trust-radius rule) followed by limited-memory BFGS until the gradient norm
    drops below ``max(stationarity_tol, STATIONARITY_FLOOR) * ||f||**2`` or the
    line search stalls. A start is accepted only when its end point is
    irreducible and passes the interpolation certificate. Iteration logs are
    kept per start in ``records``.
    """

    def __init__(self, tail: LaurentTail, n: int, config: Optional[OptimizerConfig] = None):
        self.tail = tail
        self.n = n
        self.config = config or OptimizerConfig()
        if n < 1:
            raise PreconditionError(f"Degree must be at least 1, got {n}")
        if tail.truncation_length < 2 * n + 1:
            raise PreconditionError(
                f"Tail of length {tail.truncation_length} is too short for degree {n}"
            )
        if self.config.real_mode == "auto":
            self.real = tail.is_real()
        else:
            self.real = self.config.real_mode == "real"
        self.norm2 = tail.coefficient_norm() ** 2
        tol = max(self.config.stationarity_tol, Config.STATIONARITY_FLOOR)
        self.threshold = tol * max(self.norm2, 1e-300)
        self.records: List[IterationRecord] = []
        self.failures: List[str] = []

    # Starts

    def _uniform_poles(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if self.real:
            pairs = count // 2
            radius = 0.9 * np.sqrt(rng.uniform(size=pairs))
            angle = rng.uniform(0, np.pi, size=pairs)
            upper = radius * np.exp(1j * angle)
            reals = rng.uniform(-0.9, 0.9, size=count - 2 * pairs)
            return np.concatenate([upper, np.conj(upper), reals])
        radius = 0.9 * np.sqrt(rng.uniform(size=count))
        return radius * np.exp(2j * np.pi * rng.uniform(size=count))

    def _pade_poles(self, degree: int, rng: np.random.Generator) -> Optional[np.ndarray]:
        try:
            result = classical_pade(self.tail, degree)
        except ExtremalLabError as e:
            logger.debug("No Pade start at degree %d: %s", degree, e)
            return None
        poles = poles_of(result.rational)
        limit = 0.95 * self.config.max_pole_modulus
        moduli = np.abs(poles)
        poles = np.where(moduli > limit, limit * poles / np.maximum(moduli, 1e-300), poles)
        if self.real:
            poles = np.sort_complex(poles)
        return np.concatenate([poles, self._uniform_poles(rng, self.n - degree)])

    def starts(self) -> List[np.ndarray]:
        """Pole sets: uniform in the disk, then Pade poles of degrees n, n-1, n-2."""
        rng = np.random.default_rng(self.config.seed)
        starts = [self._uniform_poles(rng, self.n) for _ in range(self.config.multistart)]
        if self.config.pade_starts:
            for degree in (self.n, self.n - 1, self.n - 2):
                if degree >= 1:
                    poles = self._pade_poles(degree, rng)
                    if poles is not None:
                        starts.append(poles)
        return starts

    # Iterations

    def _evaluate(self, theta: np.ndarray) -> Tuple[float, np.ndarray]:
        q = denominator_from_parameters(theta, self.n, self.real)
        return concentrated_objective(
            self.tail,
            q,
            gradient=self.config.gradient,
            real=self.real,
            max_pole_modulus=self.config.max_pole_modulus,
        )

    def _line_search(
        self, theta: np.ndarray, value: float, grad: np.ndarray, direction: np.ndarray, step: float
    ) -> Optional[Tuple[np.ndarray, float, np.ndarray, float]]:
        slope = float(grad @ direction)
        if slope >= 0:
            return None
        for _ in range(60):
            trial = theta + step * direction
            new_value, new_grad = self._evaluate(trial)
            if np.isfinite(new_value) and new_value <= value + ARMIJO * step * slope:
                return trial, new_value, new_grad, step
            step *= 0.5
        return None

    def _descent(self, start: int, theta, value, grad, records) -> Tuple[np.ndarray, float, np.ndarray]:
        radius = self.config.initial_step
        for _ in range(self.config.descent_iterations):
            norm = float(np.linalg.norm(grad))
            if norm <= self.threshold:
                break
            if self.config.step_rule == "trust":
                trial = theta - radius * grad / norm
                new_value, new_grad = self._evaluate(trial)
                if np.isfinite(new_value) and new_value < value:
                    theta, value, grad = trial, new_value, new_grad
                    radius *= 2.0
                else:
                    radius *= 0.25
                    continue
            else:
                found = self._line_search(theta, value, grad, -grad / norm, radius)
                if found is None:
                    break
                theta, value, grad, used = found
                radius = 2.0 * used
            norm = float(np.linalg.norm(grad))
            records.append(IterationRecord(start, len(records), value, norm, "descent"))
        return theta, value, grad

    def _quasi_newton(self, start: int, theta, value, grad, records) -> Tuple[np.ndarray, float, np.ndarray]:
        s_hist: List[np.ndarray] = []
        y_hist: List[np.ndarray] = []
        for _ in range(self.config.max_iterations):
            if np.linalg.norm(grad) <= self.threshold:
                break
            # two-loop recursion
            d = -grad.copy()
            alphas = []
            for s, y in zip(reversed(s_hist), reversed(y_hist)):
                rho = 1.0 / float(y @ s)
                alpha = rho * float(s @ d)
                alphas.append((rho, alpha))
                d -= alpha * y
            if s_hist:
                d *= float(s_hist[-1] @ y_hist[-1]) / float(y_hist[-1] @ y_hist[-1])
            for (s, y), (rho, alpha) in zip(zip(s_hist, y_hist), reversed(alphas)):
                beta = rho * float(y @ d)
                d += (alpha - beta) * s
            if float(d @ grad) >= 0:
                d = -grad
                s_hist.clear()
                y_hist.clear()

            found = self._line_search(theta, value, grad, d, 1.0)
            if found is None:
                break
            new_theta, new_value, new_grad, _ = found
            s, y = new_theta - theta, new_grad - grad
            if float(s @ y) > 1e-30:
                s_hist.append(s)
                y_hist.append(y)
                if len(s_hist) > self.config.memory:
                    s_hist.pop(0)
                    y_hist.pop(0)
            theta, value, grad = new_theta, new_value, new_grad
            records.append(
                IterationRecord(start, len(records), value, float(np.linalg.norm(grad)), "quasi-newton")
            )
        return theta, value, grad

    def _irreducible(self, numerator: np.ndarray, poles: np.ndarray) -> bool:
        scale = np.max(np.abs(numerator)) if numerator.size else 0.0
        if scale <= Config.IRREDUCIBILITY_TOL * np.sqrt(self.norm2):
            return False
        for pole in poles:
            size = np.sum(np.abs(numerator) * np.abs(pole) ** np.arange(numerator.size))
            if abs(npoly.polyval(pole, numerator)) <= Config.IRREDUCIBILITY_TOL * size:
                return False
        return True

    def run_start(
        self, index: int, poles: np.ndarray
    ) -> Tuple[Optional[CriticalPoint], List[IterationRecord]]:
        """Optimize from one pole set; returns None when the start does not converge."""
        records: List[IterationRecord] = []
        q = npoly.polyfromroots(poles)
        theta = parameters_from_denominator(np.asarray(q, dtype=complex), self.real)
        value, grad = self._evaluate(theta)
        if not np.isfinite(value):
            logger.warning("Start %d lies outside the pole barrier", index)
            return None, records
        records.append(IterationRecord(index, 0, value, float(np.linalg.norm(grad)), "start"))

        theta, value, grad = self._descent(index, theta, value, grad, records)
        theta, value, grad = self._quasi_newton(index, theta, value, grad, records)
        gradient_norm = float(np.linalg.norm(grad))
        if not np.isfinite(gradient_norm):
            logger.warning("Start %d ended with a non-finite gradient", index)
            return None, records

        q = denominator_from_parameters(theta, self.n, self.real)
        projection = project(self.tail, q)
        rational = RationalFn(projection.numerator, q)
        if not self._irreducible(projection.numerator, projection.poles):
            logger.info("Start %d reached a reducible critical point; dropped", index)
            return None, records
        certificate = interpolation_certificate(self.tail, rational)
        if not certificate.passed:
            logger.warning(
                "Start %d did not converge: objective %.6e, gradient %.3e, residual %.3e",
                index,
                value,
                gradient_norm,
                certificate.max_residual,
            )
            return None, records
        if gradient_norm > self.threshold:
            logger.info("Start %d stalled at gradient %.3e; certificate passed", index, gradient_norm)
        return (
            CriticalPoint(
                rational=rational,
                objective=projection.value,
                gradient_norm=gradient_norm,
                interpolation_residuals=certificate.residuals,
                irreducible=True,
                start=index,
                iterations=len(records),
            ),
            records,
        )

    def _same(self, a: CriticalPoint, b: CriticalPoint) -> bool:
        cost = np.abs(a.poles[:, None] - b.poles[None, :])
        rows, cols = linear_sum_assignment(cost)
        return bool(np.max(cost[rows, cols]) <= self.config.dedup_radius)

    def run(self) -> List[CriticalPoint]:
        """Run every start, then deduplicate and sort by objective."""
        starts = self.starts()
        logger.info("Searching degree %d critical points from %d starts", self.n, len(starts))
        with ThreadPoolExecutor(max_workers=Config.get_thread_count()) as pool:
            outcomes = list(pool.map(lambda pair: self.run_start(*pair), enumerate(starts)))

        found: List[CriticalPoint] = []
        for index, (point, records) in enumerate(outcomes):
            self.records.extend(records)
            if point is None:
                self.failures.append(f"start {index} did not yield an irreducible critical point")
                continue
            found.append(point)

        unique: List[CriticalPoint] = []
        for point in sorted(found, key=lambda p: (p.objective, p.start)):
            if not any(self._same(point, kept) for kept in unique):
                unique.append(point)
        if not unique:
            logger.warning("No start converged at degree %d", self.n)
        else:
            logger.info(
                "Degree %d: %d distinct critical points, best objective %.6e",
                self.n,
                len(unique),
                unique[0].objective,
            )
        return unique


def find_critical(
    tail: LaurentTail, n: int, cfg: Optional[OptimizerConfig] = None
) -> List[CriticalPoint]:
    """
    Critical points of degree n, best objective first.

    Args:
        tail: Laurent tail of f
        n: Denominator degree
        cfg: Optimizer settings

    Returns:
        List[CriticalPoint]: Distinct irreducible critical points; empty when no start converged
    """
    return CriticalPointSearch(tail, n, cfg).run()
