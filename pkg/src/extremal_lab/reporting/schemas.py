"""Pydantic models of every emitted JSON document and converters from results."""

import math
from typing import Any, Dict, List, Literal, Optional, Sequence, Type

import numpy as np
from pydantic import BaseModel, Field

from .. import __version__
from ..models import (
    CapacityResult,
    CertificateReport,
    CheckResult,
    CriticalPoint,
    CutSystem,
    LaurentTail,
    MinimalSetResult,
    PadeResult,
    PadeVsBestReport,
    PoleDistReport,
    RateReport,
    RationalFn,
    SPropertyReport,
)
from ..pade import poles_of


class ComplexValue(BaseModel):
    re: float
    im: float = 0.0


class ResidualPair(BaseModel):
    """Value and derivative residual at one reflected pole."""
    value: ComplexValue
    derivative: ComplexValue


class RationalDocument(BaseModel):
    numerator: List[ComplexValue]
    denominator: List[ComplexValue]
    poles: List[ComplexValue]


class LaurentTailDocument(BaseModel):
    kind: Literal["laurent_tail"] = "laurent_tail"
    label: str
    truncation: int = Field(ge=1)
    sampling_radius: float = Field(gt=0)
    coefficient_norm: float
    coefficients: List[ComplexValue]


class PadeDocument(BaseModel):
    kind: Literal["pade"] = "pade"
    label: str
    scheme: str
    degree: int = Field(ge=1)
    rational: RationalDocument
    system_residual: float
    interpolation_residuals: List[float]
    defective: bool
    quadrature_radius: Optional[float] = None


class CriticalPointDocument(BaseModel):
    rational: RationalDocument
    objective: float = Field(ge=0)
    gradient_norm: float
    irreducible: bool
    start: int
    iterations: int
    interpolation_residuals: List[ResidualPair]
    certificate_tolerance: float
    certificate_passed: bool


class CriticalDocument(BaseModel):
    kind: Literal["critical_points"] = "critical_points"
    label: str
    degree: int = Field(ge=1)
    points: List[CriticalPointDocument]
    failures: List[str] = Field(default_factory=list)


class ArcDocument(BaseModel):
    vertices: List[ComplexValue]
    start_label: str
    end_label: str


class NormalDerivativeDocument(BaseModel):
    arc: int
    point: ComplexValue
    plus: float
    minus: float
    mismatch: float


class SPropertyDocument(BaseModel):
    max_mismatch: float
    offset: float
    capacity: float
    samples: List[NormalDerivativeDocument]
    skipped: List[str]
    junction_angles: List[List[float]]


class MinimalSetDocument(BaseModel):
    kind: Literal["minimal_set"] = "minimal_set"
    a_points: List[ComplexValue]
    b_points: List[ComplexValue]
    capacity: float = Field(gt=0)
    stage1_capacity: float = Field(gt=0)
    status: str
    topology: List[List[int]]
    arcs: List[ArcDocument]
    s_property: Optional[SPropertyDocument] = None
    messages: List[str] = Field(default_factory=list)


class CapacityDocument(BaseModel):
    kind: Literal["capacity"] = "capacity"
    plate: Dict[str, Any]
    capacity: float = Field(gt=0)
    robin_constant: float
    residual: float
    pruned: int
    panels: int


class RateEntryDocument(BaseModel):
    degree: int
    rho2: Optional[float]
    rho_inf: Optional[float]
    root2: Optional[float]
    root_inf: Optional[float]
    gap2: Optional[float]
    gap_inf: Optional[float]
    converged: bool
    degenerate: bool
    message: str = ""


class RateDocument(BaseModel):
    kind: Literal["rate_report"] = "rate_report"
    label: str
    capacity: float
    predicted_limit: float
    degenerate: bool
    entries: List[RateEntryDocument]


class PoleDistEntryDocument(BaseModel):
    degree: int
    poles: List[ComplexValue]
    max_distance: float
    fraction_near: float
    potential_discrepancy: float
    distribution_deviation: float
    outside_disk: int = 0


class PoleDistDocument(BaseModel):
    kind: Literal["pole_distribution"] = "pole_distribution"
    probe_count: int
    monotone_distance: bool
    monotone_discrepancy: bool
    entries: List[PoleDistEntryDocument]


class PadeVsBestDocument(BaseModel):
    kind: Literal["pade_vs_best"] = "pade_vs_best"
    scheme: str
    pade: PoleDistDocument
    best: Optional[PoleDistDocument] = None
    balayage_discrepancy: Dict[str, float] = Field(default_factory=dict)
    fixed_point_gap: Dict[str, Optional[float]] = Field(default_factory=dict)
    skipped: List[str] = Field(default_factory=list)


class CheckDocument(BaseModel):
    name: str
    value: Optional[float]
    threshold: float
    passed: bool
    detail: str = ""


class VerificationDocument(BaseModel):
    kind: Literal["verification"] = "verification"
    version: str = __version__
    passed: bool
    checks: List[CheckDocument]
    rates: Optional[RateDocument] = None


DOCUMENT_MODELS: Dict[str, Type[BaseModel]] = {
    "laurent_tail": LaurentTailDocument,
    "pade": PadeDocument,
    "critical_points": CriticalDocument,
    "minimal_set": MinimalSetDocument,
    "capacity": CapacityDocument,
    "rate_report": RateDocument,
    "pole_distribution": PoleDistDocument,
    "pade_vs_best": PadeVsBestDocument,
    "verification": VerificationDocument,
}


def schema_documents() -> Dict[str, Dict[str, Any]]:
    """JSON Schemas of all emitted documents, keyed by document kind."""
    return {kind: model.model_json_schema() for kind, model in DOCUMENT_MODELS.items()}


# Converters


def _finite(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


def complex_values(values: Sequence[complex]) -> List[ComplexValue]:
    return [ComplexValue(re=float(np.real(z)), im=float(np.imag(z))) for z in values]


def rational_document(r: RationalFn) -> RationalDocument:
    poles = np.sort_complex(poles_of(r)) if r.degree >= 1 else []
    return RationalDocument(
        numerator=complex_values(r.numerator),
        denominator=complex_values(r.denominator),
        poles=complex_values(poles),
    )


def tail_document(tail: LaurentTail, label: str, sampling_radius: float) -> LaurentTailDocument:
    return LaurentTailDocument(
        label=label,
        truncation=tail.truncation_length,
        sampling_radius=sampling_radius,
        coefficient_norm=tail.coefficient_norm(),
        coefficients=complex_values(tail.coefficients),
    )


def pade_document(result: PadeResult, label: str, degree: int) -> PadeDocument:
    return PadeDocument(
        label=label,
        scheme=result.scheme.value,
        degree=degree,
        rational=rational_document(result.rational),
        system_residual=result.system_residual,
        interpolation_residuals=[float(x) for x in result.interpolation_residuals],
        defective=result.defective,
        quadrature_radius=result.quadrature_radius,
    )


def critical_point_document(point: CriticalPoint, certificate: CertificateReport) -> CriticalPointDocument:
    return CriticalPointDocument(
        rational=rational_document(point.rational),
        objective=max(point.objective, 0.0),
        gradient_norm=point.gradient_norm,
        irreducible=point.irreducible,
        start=point.start,
        iterations=point.iterations,
        interpolation_residuals=[
            ResidualPair(value=complex_values([v])[0], derivative=complex_values([d])[0])
            for v, d in certificate.residuals
        ],
        certificate_tolerance=certificate.tolerance,
        certificate_passed=certificate.passed,
    )


def cut_arcs(cut: CutSystem) -> List[ArcDocument]:
    return [
        ArcDocument(
            vertices=complex_values(arc.vertices),
            start_label=arc.start_label.value,
            end_label=arc.end_label.value,
        )
        for arc in cut.arcs
    ]


def s_property_document(report: SPropertyReport) -> SPropertyDocument:
    return SPropertyDocument(
        max_mismatch=report.max_mismatch,
        offset=report.offset,
        capacity=report.capacity,
        samples=[
            NormalDerivativeDocument(
                arc=s.arc,
                point=complex_values([s.point])[0],
                plus=s.plus,
                minus=s.minus,
                mismatch=s.mismatch,
            )
            for s in report.samples
        ],
        skipped=list(report.skipped),
        junction_angles=[[float(a) for a in angles] for angles in report.junction_angles],
    )


def minimal_set_document(result: MinimalSetResult) -> MinimalSetDocument:
    return MinimalSetDocument(
        a_points=complex_values(result.quad_diff.a_points),
        b_points=complex_values(result.quad_diff.b_points),
        capacity=result.capacity,
        stage1_capacity=result.stage1_capacity,
        status=result.status.value,
        topology=[[int(u), int(v)] for u, v in result.topology],
        arcs=cut_arcs(result.cut),
        s_property=s_property_document(result.s_property) if result.s_property else None,
        messages=list(result.messages),
    )


def capacity_document(result: CapacityResult, plate: Dict[str, Any]) -> CapacityDocument:
    return CapacityDocument(
        plate=plate,
        capacity=result.capacity,
        robin_constant=result.robin_constant,
        residual=result.residual,
        pruned=result.pruned,
        panels=result.contour.panel_count,
    )


def rate_document(report: RateReport) -> RateDocument:
    return RateDocument(
        label=report.label,
        capacity=report.capacity,
        predicted_limit=report.predicted_limit,
        degenerate=report.degenerate,
        entries=[
            RateEntryDocument(
                degree=e.degree,
                rho2=_finite(e.rho2),
                rho_inf=_finite(e.rho_inf),
                root2=_finite(e.root2),
                root_inf=_finite(e.root_inf),
                gap2=_finite(e.gap2),
                gap_inf=_finite(e.gap_inf),
                converged=e.converged,
                degenerate=e.degenerate,
                message=e.message,
            )
            for e in report.entries
        ],
    )


def pole_distribution_document(report: PoleDistReport) -> PoleDistDocument:
    return PoleDistDocument(
        probe_count=report.probe_count,
        monotone_distance=report.monotone_distance,
        monotone_discrepancy=report.monotone_discrepancy,
        entries=[
            PoleDistEntryDocument(
                degree=e.degree,
                poles=complex_values(e.poles),
                max_distance=e.max_distance,
                fraction_near=e.fraction_near,
                potential_discrepancy=e.potential_discrepancy,
                distribution_deviation=e.distribution_deviation,
                outside_disk=e.outside_disk,
            )
            for e in report.entries
        ],
    )


def pade_vs_best_document(report: PadeVsBestReport) -> PadeVsBestDocument:
    return PadeVsBestDocument(
        scheme=report.scheme.value,
        pade=pole_distribution_document(report.pade),
        best=pole_distribution_document(report.best) if report.best else None,
        balayage_discrepancy={str(n): v for n, v in sorted(report.balayage_discrepancy.items())},
        fixed_point_gap={str(n): _finite(v) for n, v in sorted(report.fixed_point_gap.items())},
        skipped=list(report.skipped),
    )


def verification_document(
    checks: Sequence[CheckResult], rates: Optional[RateReport] = None
) -> VerificationDocument:
    return VerificationDocument(
        passed=all(c.passed for c in checks),
        checks=[
            CheckDocument(
                name=c.name,
                value=_finite(c.value),
                threshold=c.threshold,
                passed=c.passed,
                detail=c.detail,
            )
            for c in checks
        ],
        rates=rate_document(rates) if rates is not None else None,
    )
