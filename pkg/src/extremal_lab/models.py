"""Core data models for the extremal lab."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.polynomial.polynomial as npoly

from .series import evaluate_tail, rational_derivative, rational_tail, tail_derivative


class EndpointLabel(str, Enum):
    """Labels of cut endpoints."""
    E0 = "E0"  # branch endpoint, degree 1
    E1 = "E1"  # junction, degree >= 3


class TerminationCause(str, Enum):
    """Why a trajectory trace stopped."""
    A_POINT = "a_point"
    B_POINT = "b_point"
    BOUNDARY = "boundary"
    MAX_LENGTH = "max_length"


class SchemeKind(str, Enum):
    """Generators of interpolation schemes."""
    AT_INFINITY = "all-at-infinity"
    REFLECTED_POLES = "reflected-poles"
    EXPLICIT = "explicit"


class SolveStatus(str, Enum):
    """Certification status of a minimal set."""
    VERIFIED = "verified"
    UNVERIFIED = "unverified"


@dataclass
class BranchFactor:
    """A factor (1 - center/z)**exponent of a branch-product term."""
    center: complex
    exponent: Fraction

    def __post_init__(self) -> None:
        """Validate factor data after initialization."""
        self.center = complex(self.center)
        self.exponent = Fraction(self.exponent)
        if not abs(self.center) < 1:
            raise ValueError(f"Branch center {self.center} must lie in the open unit disk")

    @property
    def is_branch(self) -> bool:
        """True when the factor is genuinely multivalued."""
        return self.exponent.denominator >= 2


@dataclass
class Term:
    """limit * z**-1 * prod(1 - c/z)**e with exponents summing to -1."""
    factors: List[BranchFactor] = field(default_factory=list)
    limit: complex = 1.0

    def __post_init__(self) -> None:
        """Validate the exponent normalization."""
        self.limit = complex(self.limit)
        total = sum((f.exponent for f in self.factors), Fraction(0))
        if total != -1:
            raise ValueError(f"Term exponents must sum to -1, got {total}")


@dataclass
class SimplePole:
    """A summand residue / (z - pole) of the rational part."""
    pole: complex
    residue: complex

    def __post_init__(self) -> None:
        self.pole = complex(self.pole)
        self.residue = complex(self.residue)
        if not abs(self.pole) < 1:
            raise ValueError(f"Pole {self.pole} must lie in the open unit disk")


@dataclass
class FunctionSpec:
    """An algebraic function: branch-product terms plus a rational part."""
    terms: List[Term] = field(default_factory=list)
    poles: List[SimplePole] = field(default_factory=list)
    label: str = "f"

    def __post_init__(self) -> None:
        if not self.terms and not self.poles:
            raise ValueError("Function specification cannot be empty")

    @property
    def branch_points(self) -> List[complex]:
        """Distinct centers of multivalued factors, in declaration order."""
        points: List[complex] = []
        for term in self.terms:
            for factor in term.factors:
                if factor.is_branch and all(abs(factor.center - p) > 1e-14 for p in points):
                    points.append(factor.center)
        return points

    @property
    def branch_radius(self) -> float:
        """Largest modulus of a branch center (0 when there is none)."""
        return max((abs(p) for p in self.branch_points), default=0.0)

    @property
    def singular_radius(self) -> float:
        """Largest modulus of any center or pole."""
        radii = [abs(f.center) for t in self.terms for f in t.factors]
        radii += [abs(p.pole) for p in self.poles]
        return max(radii, default=0.0)

    @property
    def limit_at_infinity(self) -> complex:
        """Value of z*f(z) at infinity."""
        return sum((t.limit for t in self.terms), 0j) + sum((p.residue for p in self.poles), 0j)

    @property
    def is_conjugate_symmetric(self) -> bool:
        """True when every datum appears together with its conjugate."""
        def closed(items: Sequence[Tuple[complex, complex]]) -> bool:
            return all(
                any(abs(a.conjugate() - b) < 1e-14 and abs(x.conjugate() - y) < 1e-14 for b, y in items)
                for a, x in items
            )

        factor_data = [
            (f.center, complex(float(f.exponent))) for t in self.terms for f in t.factors
        ]
        term_limits = [(t.limit, 0j) for t in self.terms]
        pole_data = [(p.pole, p.residue) for p in self.poles]
        return closed(factor_data) and closed(term_limits) and closed(pole_data)


@dataclass
class LaurentTail:
    """Truncated coefficients of f(z) = sum c_k z**-(k+1)."""
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        self.coefficients = np.asarray(self.coefficients, dtype=complex).ravel()
        if self.coefficients.size == 0:
            raise ValueError("Laurent tail cannot be empty")
        if not np.all(np.isfinite(self.coefficients)):
            raise ValueError("Laurent tail coefficients must be finite")

    @property
    def truncation_length(self) -> int:
        return int(self.coefficients.size)

    def coefficient_norm(self) -> float:
        """Coefficient-space norm sqrt(sum |c_k|^2)."""
        return float(np.linalg.norm(self.coefficients))

    def is_real(self, tol: float = 1e-14) -> bool:
        scale = max(np.max(np.abs(self.coefficients)), 1e-300)
        return bool(np.max(np.abs(self.coefficients.imag)) <= tol * scale)

    def evaluate(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        return evaluate_tail(self.coefficients, z)

    def derivative(self, z: Union[complex, np.ndarray], order: int = 1) -> Union[complex, np.ndarray]:
        return tail_derivative(self.coefficients, z, order)

    def rotated(self, alpha: float) -> "LaurentTail":
        """Tail of exp(-i alpha) f(exp(-i alpha) z): singularities rotate by exp(i alpha)."""
        k = np.arange(self.truncation_length)
        return LaurentTail(self.coefficients * np.exp(1j * alpha * k))

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, self.truncation_length), dtype=complex)
        out[: self.truncation_length] = self.coefficients
        return out


@dataclass
class DiscreteMeasure:
    """Weighted point masses."""
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        self.points = np.asarray(self.points, dtype=complex).ravel()
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        if self.points.shape != self.weights.shape:
            raise ValueError("Measure points and weights must have the same length")

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    @classmethod
    def dirac(cls, point: complex, mass: float = 1.0) -> "DiscreteMeasure":
        return cls(np.array([point]), np.array([mass]))

    @classmethod
    def uniform(cls, points: Sequence[complex]) -> "DiscreteMeasure":
        pts = np.asarray(points, dtype=complex)
        return cls(pts, np.full(pts.size, 1.0 / max(pts.size, 1)))

    def clamped(self) -> "DiscreteMeasure":
        """Probability-measure copy with round-off negatives set to zero."""
        weights = np.where(self.weights < 0, 0.0, self.weights)
        return DiscreteMeasure(self.points.copy(), weights / np.sum(weights))


@dataclass
class Contour:
    """A union of straight panels."""
    starts: np.ndarray
    ends: np.ndarray
    arc_index: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))

    def __post_init__(self) -> None:
        self.starts = np.asarray(self.starts, dtype=complex).ravel()
        self.ends = np.asarray(self.ends, dtype=complex).ravel()
        if self.starts.shape != self.ends.shape:
            raise ValueError("Panel starts and ends must have the same length")
        if self.arc_index.size == 0:
            self.arc_index = np.zeros(self.starts.size, dtype=int)
        if np.any(np.abs(self.ends - self.starts) <= 0):
            raise ValueError("Panel lengths must be positive")

    @property
    def panel_count(self) -> int:
        return int(self.starts.size)

    @property
    def nodes(self) -> np.ndarray:
        return 0.5 * (self.starts + self.ends)

    @property
    def arc_weights(self) -> np.ndarray:
        return np.abs(self.ends - self.starts)

    @property
    def panels(self) -> List[Tuple[complex, complex]]:
        return list(zip(self.starts.tolist(), self.ends.tolist()))

    @property
    def vertices(self) -> np.ndarray:
        """Distinct panel endpoints."""
        points = np.concatenate([self.starts, self.ends])
        rounded = np.round(points.real, 13) + 1j * np.round(points.imag, 13)
        _, index = np.unique(rounded, return_index=True)
        return points[np.sort(index)]

    @classmethod
    def circle(cls, radius: float, panels: int, center: complex = 0.0) -> "Contour":
        theta = 2 * np.pi * np.arange(panels + 1) / panels
        points = center + radius * np.exp(1j * theta)
        return cls(points[:-1], points[1:])

    @classmethod
    def segment(cls, a: complex, b: complex, panels: int, graded: bool = True) -> "Contour":
        t = graded_breakpoints(panels, graded, graded)
        points = a + (b - a) * t
        return cls(points[:-1], points[1:])

    @classmethod
    def polyline(
        cls,
        vertices: Sequence[complex],
        panels: int,
        grade_start: bool = False,
        grade_end: bool = False,
    ) -> "Contour":
        """Resample a polyline by arclength into the given number of panels."""
        points = resample_polyline(np.asarray(vertices, dtype=complex), panels, grade_start, grade_end)
        return cls(points[:-1], points[1:])

    @classmethod
    def concatenate(cls, contours: Sequence["Contour"]) -> "Contour":
        arcs = [np.full(c.panel_count, i, dtype=int) for i, c in enumerate(contours)]
        return cls(
            np.concatenate([c.starts for c in contours]),
            np.concatenate([c.ends for c in contours]),
            np.concatenate(arcs),
        )


def graded_breakpoints(panels: int, grade_start: bool, grade_end: bool) -> np.ndarray:
    """Panel breakpoints in [0, 1], cosine graded toward the flagged ends."""
    s = np.linspace(0.0, 1.0, panels + 1)
    if grade_start and grade_end:
        return 0.5 - 0.5 * np.cos(np.pi * s)
    if grade_start:
        return 1.0 - np.cos(0.5 * np.pi * s)
    if grade_end:
        return np.sin(0.5 * np.pi * s)
    return s


def resample_polyline(
    vertices: np.ndarray, panels: int, grade_start: bool = False, grade_end: bool = False
) -> np.ndarray:
    """Points along a polyline at (possibly graded) arclength fractions."""
    seg = np.abs(np.diff(vertices))
    keep = np.concatenate([[True], seg > 0])
    vertices = vertices[keep]
    cumulative = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(vertices)))])
    total = cumulative[-1]
    if total <= 0:
        raise ValueError("Polyline has zero length")
    targets = graded_breakpoints(panels, grade_start, grade_end) * total
    real = np.interp(targets, cumulative, vertices.real)
    imag = np.interp(targets, cumulative, vertices.imag)
    return real + 1j * imag


@dataclass
class CapacityResult:
    """Equilibrium problem solution on a contour."""
    capacity: float
    equilibrium: DiscreteMeasure
    robin_constant: float
    residual: float
    contour: Contour
    pruned: int = 0
    field_values: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if not self.capacity > 0:
            raise ValueError("Capacity must be positive")


@dataclass
class FeketeResult:
    """Approximate weighted Fekete configuration."""
    points: np.ndarray
    delta: float
    corrected_capacity: float
    sweeps: int = 0


@dataclass
class QuadDiff:
    """Data of q(z) = prod(z-b)(1-conj(b)z) / prod(z-a)(1-conj(a)z)."""
    a_points: List[complex]
    b_points: List[complex] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.a_points = [complex(a) for a in self.a_points]
        self.b_points = [complex(b) for b in self.b_points]
        if len(self.a_points) < 2:
            raise ValueError("A quadratic differential needs at least 2 a-points")
        if len(self.b_points) != len(self.a_points) - 2:
            raise ValueError(
                f"Expected {len(self.a_points) - 2} b-points, got {len(self.b_points)}"
            )
        if any(abs(p) >= 1 for p in self.a_points + self.b_points):
            raise ValueError("a-points and b-points must lie in the open unit disk")


@dataclass
class TracedArc:
    """Result of a trajectory trace."""
    vertices: np.ndarray
    termination: TerminationCause
    end_point: Optional[complex] = None
    length: float = 0.0
    invariant_error: float = 0.0
    steps: int = 0


@dataclass
class Arc:
    """A polyline arc of a cut with labeled endpoints."""
    vertices: np.ndarray
    start_label: EndpointLabel = EndpointLabel.E0
    end_label: EndpointLabel = EndpointLabel.E1

    def __post_init__(self) -> None:
        self.vertices = np.asarray(self.vertices, dtype=complex).ravel()
        if self.vertices.size < 2:
            raise ValueError("An arc needs at least two vertices")

    @property
    def length(self) -> float:
        return float(np.sum(np.abs(np.diff(self.vertices))))


@dataclass
class CutSystem:
    """A candidate admissible cut made of labeled arcs."""
    arcs: List[Arc]
    a_points: List[complex] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.arcs:
            raise ValueError("A cut needs at least one arc")
        self.a_points = [complex(a) for a in self.a_points]

    def endpoints(self) -> List[Tuple[complex, EndpointLabel]]:
        out: List[Tuple[complex, EndpointLabel]] = []
        for arc in self.arcs:
            out.append((complex(arc.vertices[0]), arc.start_label))
            out.append((complex(arc.vertices[-1]), arc.end_label))
        return out

    def distance(self, z: Union[complex, np.ndarray]) -> np.ndarray:
        """Euclidean distance from points to the union of arcs."""
        z = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
        starts = np.concatenate([arc.vertices[:-1] for arc in self.arcs])[None, :]
        steps = np.concatenate([np.diff(arc.vertices) for arc in self.arcs])[None, :]
        norms = np.maximum(np.abs(steps) ** 2, 1e-300)
        best = np.empty(z.size)
        for lo in range(0, z.size, 256):
            chunk = z[lo : lo + 256, None]
            t = np.clip(np.real((chunk - starts) * np.conj(steps)) / norms, 0.0, 1.0)
            best[lo : lo + 256] = np.min(np.abs(chunk - (starts + t * steps)), axis=1)
        return best

    def sample_points(self, spacing: float = 1e-3) -> np.ndarray:
        """Arc points no further apart than the given spacing."""
        return np.concatenate([_densify(arc.vertices, spacing) for arc in self.arcs])

    def hausdorff(self, other: "CutSystem") -> float:
        """Symmetric Hausdorff distance between vertex-refined polylines."""
        mine = self.sample_points()
        theirs = other.sample_points()
        return float(max(np.max(other.distance(mine)), np.max(self.distance(theirs))))

    def to_contour(self, panels_per_arc: int) -> Contour:
        """Discretize every arc, grading panels toward E0 endpoints."""
        pieces = [
            Contour.polyline(
                arc.vertices,
                panels_per_arc,
                grade_start=arc.start_label == EndpointLabel.E0,
                grade_end=arc.end_label == EndpointLabel.E0,
            )
            for arc in self.arcs
        ]
        return Contour.concatenate(pieces)

    def transformed(self, mapping) -> "CutSystem":
        """Image of the cut under a vectorized point map."""
        return CutSystem(
            [Arc(mapping(arc.vertices), arc.start_label, arc.end_label) for arc in self.arcs],
            [complex(mapping(np.array([a]))[0]) for a in self.a_points],
        )


def _densify(vertices: np.ndarray, spacing: float) -> np.ndarray:
    pieces = [vertices[:1]]
    for a, b in zip(vertices[:-1], vertices[1:]):
        count = max(1, int(np.ceil(abs(b - a) / spacing)))
        pieces.append(a + (b - a) * np.arange(1, count + 1) / count)
    return np.concatenate(pieces)


@dataclass
class NormalDerivativeSample:
    """One-sided normal derivatives at an interior arc point."""
    arc: int
    point: complex
    plus: float
    minus: float
    mismatch: float


@dataclass
class SPropertyReport:
    """Symmetry check of the Green equilibrium potential across a cut."""
    samples: List[NormalDerivativeSample] = field(default_factory=list)
    max_mismatch: float = 0.0
    offset: float = 0.0
    capacity: float = 0.0
    skipped: List[str] = field(default_factory=list)
    junction_angles: List[List[float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.samples:
            self.max_mismatch = max(s.mismatch for s in self.samples)


@dataclass
class ProbeLoop:
    """A small circle used to measure argument increments."""
    center: complex
    radius: float
    samples: int = 256


@dataclass
class HSquaredReport:
    """Jump residuals of H across arcs and windings of H**2 around loops."""
    jump_residuals: List[float] = field(default_factory=list)
    windings: List[int] = field(default_factory=list)
    raw_windings: List[float] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def max_jump(self) -> float:
        return max(self.jump_residuals, default=0.0)


@dataclass
class MinimalSetResult:
    """Outcome of the minimal-capacity cut search."""
    cut: CutSystem
    quad_diff: QuadDiff
    capacity: float
    stage1_capacity: float
    topology: List[Tuple[int, int]] = field(default_factory=list)
    status: SolveStatus = SolveStatus.UNVERIFIED
    s_property: Optional[SPropertyReport] = None
    messages: List[str] = field(default_factory=list)


@dataclass
class RationalFn:
    """p/q with q monic, coefficients in ascending order."""
    numerator: np.ndarray
    denominator: np.ndarray
    cached_poles: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.numerator = np.atleast_1d(np.asarray(self.numerator, dtype=complex))
        den = np.trim_zeros(np.atleast_1d(np.asarray(self.denominator, dtype=complex)), "b")
        if den.size == 0:
            raise ValueError("Denominator cannot be zero")
        lead = den[-1]
        self.denominator = den / lead
        self.numerator = self.numerator / lead
        if self.numerator.size > max(self.degree, 1):
            extra = self.numerator[self.degree:]
            if np.any(np.abs(extra) > 0):
                raise ValueError("Numerator degree must be below the denominator degree")
            self.numerator = self.numerator[: max(self.degree, 1)]

    @property
    def degree(self) -> int:
        return int(self.denominator.size - 1)

    def evaluate(self, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
        z = np.asarray(z, dtype=complex)
        return npoly.polyval(z, self.numerator) / npoly.polyval(z, self.denominator)

    def derivative(self, z: Union[complex, np.ndarray], order: int = 1) -> Union[complex, np.ndarray]:
        return rational_derivative(self.numerator, self.denominator, z, order)

    def tail(self, length: int) -> np.ndarray:
        return rational_tail(self.numerator, self.denominator, length)

    @classmethod
    def from_poles_residues(cls, poles: Sequence[complex], residues: Sequence[complex]) -> "RationalFn":
        """Partial fractions sum r_j / (z - xi_j) with distinct poles."""
        den = npoly.polyfromroots(poles)
        num = np.zeros(len(poles), dtype=complex)
        for j, (pole, residue) in enumerate(zip(poles, residues)):
            others = [p for i, p in enumerate(poles) if i != j]
            num[: len(others) + 1] += residue * npoly.polyfromroots(others)
        return cls(num, den)


@dataclass
class PadeResult:
    """A (multipoint) Pade approximant with its diagnostics."""
    rational: RationalFn
    system_residual: float
    interpolation_residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    defective: bool = False
    scheme: SchemeKind = SchemeKind.AT_INFINITY
    quadrature_radius: Optional[float] = None


@dataclass
class InterpolationScheme:
    """Interpolation multisets E_n; infinite points are stored as a count."""
    kind: SchemeKind
    finite_points: Dict[int, List[complex]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for n, points in self.finite_points.items():
            if len(points) > 2 * n:
                raise ValueError(f"E_{n} has {len(points)} points, more than 2n={2 * n}")
            if any(abs(p) < 1 for p in points):
                raise ValueError(f"E_{n} has a point in the open unit disk")
            if self.kind == SchemeKind.EXPLICIT and len(points) != 2 * n:
                raise ValueError(f"Explicit E_{n} must list exactly 2n={2 * n} points")

    def finite(self, n: int) -> List[complex]:
        """Finite points of E_n."""
        if self.kind == SchemeKind.AT_INFINITY:
            return []
        if n not in self.finite_points:
            raise KeyError(f"Scheme does not define degree {n}")
        return list(self.finite_points[n])

    def infinite_count(self, n: int) -> int:
        return 2 * n - len(self.finite(n))

    @classmethod
    def at_infinity(cls) -> "InterpolationScheme":
        return cls(SchemeKind.AT_INFINITY)

    @classmethod
    def reflected_poles(cls, poles_by_degree: Dict[int, Sequence[complex]]) -> "InterpolationScheme":
        """E_n holds 1/conj(xi) twice for every degree-n pole xi; poles at 0 go to infinity."""
        points = {}
        for n, poles in poles_by_degree.items():
            reflected = [complex(1 / np.conj(p)) for p in poles if p != 0]
            points[int(n)] = [x for x in reflected for _ in range(2)]
        return cls(SchemeKind.REFLECTED_POLES, points)

    @classmethod
    def explicit(cls, points_by_degree: Dict[int, Sequence[complex]]) -> "InterpolationScheme":
        return cls(
            SchemeKind.EXPLICIT,
            {int(n): [complex(p) for p in pts] for n, pts in points_by_degree.items()},
        )


@dataclass
class CriticalPoint:
    """A critical rational function of the squared-error functional."""
    rational: RationalFn
    objective: float
    gradient_norm: float
    interpolation_residuals: List[Tuple[complex, complex]] = field(default_factory=list)
    irreducible: bool = True
    start: int = -1
    iterations: int = 0

    @property
    def poles(self) -> np.ndarray:
        if self.rational.cached_poles is None:
            self.rational.cached_poles = npoly.polyroots(self.rational.denominator)
        return self.rational.cached_poles


@dataclass
class IterationRecord:
    """One optimizer iteration of one start."""
    start: int
    iteration: int
    objective: float
    gradient_norm: float
    phase: str = "descent"


@dataclass
class CertificateReport:
    """Residuals of the double interpolation at reflected poles."""
    residuals: List[Tuple[complex, complex]] = field(default_factory=list)
    nodes: List[complex] = field(default_factory=list)
    tolerance: float = 0.0
    widened: List[bool] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max((max(abs(v), abs(d)) for v, d in self.residuals), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass
class RateEntry:
    """Errors of the best critical point at one degree."""
    degree: int
    rho2: float
    rho_inf: float
    root2: float
    root_inf: float
    gap2: float
    gap_inf: float
    converged: bool = True
    degenerate: bool = False
    message: str = ""


@dataclass
class RateReport:
    """Error-rate study against exp(-1/cap(K,T))."""
    label: str
    capacity: float
    predicted_limit: float
    entries: List[RateEntry] = field(default_factory=list)

    @property
    def degenerate(self) -> bool:
        return bool(self.entries) and all(e.degenerate for e in self.entries)


@dataclass
class PoleDistEntry:
    """Pole-location metrics at one degree."""
    degree: int
    poles: List[complex]
    max_distance: float
    fraction_near: float
    potential_discrepancy: float
    distribution_deviation: float
    outside_disk: int = 0


@dataclass
class PoleDistReport:
    """Pole distribution study against an equilibrium measure."""
    entries: List[PoleDistEntry] = field(default_factory=list)
    probe_count: int = 0
    monotone_distance: bool = False
    monotone_discrepancy: bool = False


@dataclass
class PadeVsBestReport:
    """Pade pole metrics, compared with critical points when available."""
    scheme: SchemeKind
    pade: PoleDistReport
    best: Optional[PoleDistReport] = None
    balayage_discrepancy: Dict[int, float] = field(default_factory=dict)
    fixed_point_gap: Dict[int, float] = field(default_factory=dict)
    skipped: List[str] = field(default_factory=list)


@dataclass
class CheckResult:
    """One named pass/fail check of the verification run."""
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""
