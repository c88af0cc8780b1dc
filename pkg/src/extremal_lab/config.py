"""Configuration settings for the extremal lab."""

import logging
import os
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationInfo, field_validator, model_validator

logger = logging.getLogger(__name__)


class Config:
    """Configuration settings for the extremal lab."""

    # Laurent sampling
    SAMPLING_FACTOR = 8  # samples per requested coefficient
    DEFAULT_TRUNCATION = 100
    DEFAULT_SAMPLING_RADIUS = 1.0

    # Potential theory
    BALAYAGE_GRID = 512
    CIRCLE_SNAP_TOL = 1e-6  # masses this close to T are already on T
    NEGATIVE_WEIGHT_TOL = 1e-12
    MAX_ACTIVE_SET_ITERATIONS = 25
    DEFAULT_PANELS = 256

    # Minimal sets
    MAX_FULL_TOPOLOGY_POINTS = 6
    STAGE1_PANELS_PER_ARC = 24
    CUT_PANELS_PER_ARC = 96
    STAGE1_CONTROL_POINTS = 1
    STAGE1_MAX_EVALUATIONS = 1500
    STAGE1_REFINED_TOPOLOGIES = 2
    TRACE_INITIAL_STEP = 1e-3
    TRACE_MIN_STEP = 1e-13
    TRACE_MAX_STEP = 2e-2
    TRACE_TOLERANCE = 1e-10
    TRACE_CAPTURE_RADIUS = 1e-5
    TRACE_START_OFFSET = 1e-4
    TRACE_MAX_LENGTH = 8.0
    S_PROPERTY_TOLERANCE = 1e-2
    FD_OFFSET_MIN = 1e-3

    # Pade
    PADE_QUADRATURE_NODES = 1024
    HANKEL_RCOND = 1e-13
    TAIL_SINGULAR_RADIUS_FLOOR = 0.5
    TAIL_NOISE_FLOOR = 1e-13

    # Hardy critical points
    DEDUP_RADIUS = 1e-4
    CERTIFICATE_TOLERANCE = 1e-7
    STATIONARITY_FLOOR = 1.5e-8  # about sqrt(machine epsilon)
    MAX_BASIS_LENGTH = 40000
    IRREDUCIBILITY_TOL = 1e-8

    # Asymptotics
    SUP_NORM_SAMPLES = 2048
    PROBE_DISTANCE = 0.1
    PROBE_GRID_SIZE = 41
    CUT_PROXIMITY = 0.05
    DEGENERATE_RELATIVE_ERROR = 1e-10

    # Reporting
    SUPPORTED_EXPORT_FORMATS = ["json", "csv", "svg"]
    SVG_SIZE = 480

    # Environment Variables
    @classmethod
    def get_log_level(cls) -> str:
        """Get logging level from environment."""
        return os.getenv("LOG_LEVEL", "INFO")

    @classmethod
    def is_debug_mode(cls) -> bool:
        """Check if debug mode is enabled."""
        return os.getenv("DEBUG", "false").lower() == "true"

    @classmethod
    def get_thread_count(cls) -> int:
        """Get the worker thread cap from EXTREMAL_LAB_THREADS."""
        raw = os.getenv("EXTREMAL_LAB_THREADS")
        if raw is None:
            return max(1, min(4, os.cpu_count() or 1))
        try:
            value = int(raw)
        except ValueError:
            logger.warning("Ignoring non-integer EXTREMAL_LAB_THREADS=%r", raw)
            return 1
        if value < 1:
            logger.warning("EXTREMAL_LAB_THREADS must be positive, got %d", value)
            return 1
        return value


class OptimizerConfig(BaseModel):
    """Settings of the multistart descent + quasi-Newton search."""

    multistart: int = Field(default=8, ge=1)
    seed: int = 0
    step_rule: Literal["armijo", "trust"] = "armijo"
    descent_iterations: int = Field(default=30, ge=0)
    initial_step: float = Field(default=1e-2, gt=0)
    memory: int = Field(default=10, ge=1)
    stationarity_tol: float = Field(default=1e-12, gt=0)
    max_iterations: int = Field(default=600, ge=1)
    dedup_radius: float = Field(default=Config.DEDUP_RADIUS, gt=0)
    gradient: Literal["analytic", "finite_difference"] = "analytic"
    real_mode: Literal["auto", "real", "complex"] = "auto"
    pade_starts: bool = True
    max_pole_modulus: float = Field(default=0.999, gt=0, lt=1)


class ContourConfig(BaseModel):
    """Description of a capacity plate."""

    kind: Literal["circle", "segment", "polyline"] = "circle"
    radius: float = Field(default=0.5, gt=0, lt=1)
    center: List[float] = Field(default_factory=lambda: [0.0, 0.0])
    vertices: List[List[float]] = Field(default_factory=list)
    panels: int = Field(default=Config.DEFAULT_PANELS, ge=2)

    @model_validator(mode="after")
    def _check_vertices(self) -> "ContourConfig":
        if self.kind in ("segment", "polyline") and len(self.vertices) < 2:
            raise ValueError(f"{self.kind} contour needs at least 2 vertices")
        return self


class ExperimentConfig(BaseModel):
    """A reproducible experiment manifest."""

    function: Union[str, Dict[str, Any]] = "f1"
    degrees: List[int] = Field(default_factory=lambda: [12])
    truncation: int = Config.DEFAULT_TRUNCATION
    sampling_radius: Optional[float] = None
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    output_dir: str = "results"
    emit: List[Literal["json", "csv", "svg"]] = Field(default_factory=lambda: ["json"])
    active_points: Optional[List[List[float]]] = None
    contour: ContourConfig = Field(default_factory=ContourConfig)
    scheme: Literal["infinity", "reflected"] = "infinity"
    include_z5: bool = False

    @field_validator("degrees")
    @classmethod
    def _check_degrees(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("degrees cannot be empty")
        if any(n < 1 for n in value):
            raise ValueError("degrees must be positive")
        if value != sorted(set(value)):
            raise ValueError("degrees must be sorted ascending without repeats")
        return value

    @field_validator("truncation")
    @classmethod
    def _check_truncation(cls, value: int, info: ValidationInfo) -> int:
        if value < 1:
            raise ValueError("truncation N must be at least 1")
        degrees = info.data.get("degrees")
        if degrees and value < 2 * max(degrees) + 1:
            raise ValueError(
                f"truncation N={value} must exceed 2*max degree={2 * max(degrees)}"
            )
        return value

    @field_validator("sampling_radius")
    @classmethod
    def _check_radius(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value <= 0:
            raise ValueError("sampling radius must be positive")
        return value
