"""Custom exceptions for the extremal rational approximation lab."""


class ExtremalLabError(Exception):
    """Base exception for extremal lab errors."""
    exit_code = 3


class ValidationError(ExtremalLabError):
    """Raised when user supplied input is invalid."""
    exit_code = 2


class FunctionSpecError(ValidationError):
    """Raised when a function specification document is malformed."""
    pass


class ConfigValidationError(ValidationError):
    """Raised when an experiment or optimizer configuration is invalid."""
    pass


class PreconditionError(ValidationError):
    """Raised when an operation is called outside of its domain."""
    pass


class AmbiguousBranchError(PreconditionError):
    """Raised when a point lies inside the disk of branch point radii."""
    pass


class NumericalError(ExtremalLabError):
    """Raised when a numerical procedure fails."""
    exit_code = 3


class PoleError(NumericalError):
    """Raised when a function is evaluated at one of its poles."""
    pass


class GreenPoleError(PoleError):
    """Raised when the Green function is evaluated at its pole."""
    pass


class SingularSystemError(NumericalError):
    """Raised when a discretized linear system is singular."""
    pass


class TraceStalledError(NumericalError):
    """Raised when trajectory tracing collapses its step size."""
    pass


class QuadratureRadiusError(NumericalError):
    """Raised when no contour separates the singularities from the scheme."""
    pass


class ConvergenceError(NumericalError):
    """Raised when an iterative method fails to converge."""
    pass


class DefectivePadeError(NumericalError):
    """Raised when a defective Pade table entry is requested strictly."""
    pass


class ReportExportError(ExtremalLabError):
    """Raised when reports cannot be serialized or written."""
    exit_code = 3
