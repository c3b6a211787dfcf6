from typing import Any, List, Optional, Sequence, Tuple


class ToolkitError(Exception):
    """Base exception for cone toolkit errors."""
    def __init__(self, message: str = "An error occurred in the cone toolkit"):
        self.message = message
        super().__init__(self.message)


class ConfigurationError(ToolkitError):
    """Raised when configuration validation fails."""
    def __init__(self, message: str = "Configuration error", missing_fields: list = None):
        self.missing_fields = missing_fields
        if missing_fields:
            message = f"{message} - Missing fields: {', '.join(missing_fields)}"
        super().__init__(message)


class DimensionMismatchError(ToolkitError):
    """Raised when operands have incompatible shapes."""
    def __init__(self, expected: Any, actual: Any, context: str = None):
        self.expected = expected
        self.actual = actual
        self.context = context
        message = f"Dimension mismatch: expected {expected}, got {actual}"
        if context:
            message = f"{message} ({context})"
        super().__init__(message)


class MixedScalarError(ToolkitError):
    """Raised when exact and floating entries meet in one operation."""
    def __init__(self, message: str = "Exact and float scalars cannot be mixed"):
        super().__init__(message)


class NotSymmetricError(ToolkitError):
    """Raised when a spectral routine receives a non-symmetric matrix."""
    def __init__(self, asymmetry: float, tol: float):
        self.asymmetry = asymmetry
        self.tol = tol
        super().__init__(f"Matrix is not symmetric: asymmetry {asymmetry:.3e} exceeds tolerance {tol:.1e}")


class NumericalError(ToolkitError):
    """Raised when an iterative float routine fails to converge."""
    def __init__(self, routine: str, sweeps: int, residual: float):
        self.routine = routine
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(f"{routine} did not converge in {sweeps} sweeps (residual {residual:.3e})")


class SingularMatrixError(ToolkitError):
    """Raised when an inverse or solve hits a singular matrix."""
    def __init__(self, message: str = "Matrix is singular"):
        super().__init__(message)


class LpCertificateError(ToolkitError):
    """Raised when an LP outcome fails its own exact certificate replay."""
    def __init__(self, status: str, details: str = None):
        self.status = status
        self.details = details
        message = f"LP certificate check failed for status {status}"
        if details:
            message = f"{message}: {details}"
        super().__init__(message)


class InvalidConeError(ToolkitError):
    """Raised when cone data does not describe a proper cone."""
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Invalid cone: {reason}")


class UnsupportedConeError(ToolkitError):
    """Raised when an operation is not available for a cone representation."""
    def __init__(self, kind: str, operation: str):
        self.kind = kind
        self.operation = operation
        super().__init__(f"Operation {operation} is not supported for {kind} cones")


class CapExceededError(ToolkitError):
    """Raised when a size cap is exceeded."""
    def __init__(self, quantity: str, value: int, cap: int):
        self.quantity = quantity
        self.value = value
        self.cap = cap
        super().__init__(f"{quantity} ({value}) exceeds cap ({cap})")


class ClassicalConeError(ToolkitError):
    """Raised when a certifier is handed a classical cone."""
    def __init__(self, position: str, basis: Optional[Sequence[Sequence[Any]]] = None):
        self.position = position
        self.basis = [list(v) for v in basis] if basis is not None else None
        super().__init__(f"{position} cone is classical")


class ParameterRangeError(ToolkitError):
    """Raised when a parameter leaves its admissible range."""
    def __init__(self, name: str, value: Any, interval: str):
        self.name = name
        self.value = value
        self.interval = interval
        super().__init__(f"Parameter {name}={value} outside {interval}")


class SandwichError(ToolkitError):
    """Raised when a polygon cannot be sandwiched between a kite and the square."""
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Sandwich failed: {reason}")


class CornerContactError(ToolkitError):
    """Raised when a polygon touches a corner of the square."""
    def __init__(self, point: Tuple[Any, Any]):
        self.point = tuple(point)
        super().__init__(f"Polygon vertex {self.point} lies on a corner of the square")


class RetractError(ToolkitError):
    """Raised when a retract cannot be built, verified or used."""
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Retract error: {reason}")


class CertificateError(ToolkitError):
    """Raised when a certificate is malformed or cannot be built."""
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Certificate error: {reason}")


class NormError(ToolkitError):
    """Raised for unsupported or invalid tensor norm requests."""
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Norm error: {reason}")


class RobustnessError(ToolkitError):
    """Raised when entanglement robustness is undefined or fails."""
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Robustness error: {reason}")


class SchemaError(ToolkitError):
    """Raised when an input document fails validation."""
    def __init__(self, path: str, details: List[str] = None):
        self.path = path
        self.details = details or []
        message = f"Invalid input document {path}"
        if self.details:
            message = f"{message} - {'; '.join(self.details)}"
        super().__init__(message)
