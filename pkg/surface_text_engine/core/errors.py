# Typed error hierarchy for the engine
# core/errors.py
#
# Every error carries a machine-readable code (GEO-001, NRM-003, ...) and a
# category that the CLI maps to its exit status.

from typing import Any, Dict

INVALID_INPUT = "invalid_input"
DEGENERATE_GEOMETRY = "degenerate_geometry"
IO_FAILURE = "io_failure"


class SurfaceTextError(ValueError):
    """
    Base class for all engine errors.

    Attributes:
        error_code: Machine-readable code (e.g., GEO-001)
        category: One of invalid_input, degenerate_geometry, io_failure
        context: Keyword context (box_index, normal, row, path, ...)
    """

    error_code = "STE-000"
    category = INVALID_INPUT

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def __getattr__(self, name: str) -> Any:
        context = self.__dict__.get("context", {})
        if name in context:
            return context[name]
        raise AttributeError(name)

    def __str__(self) -> str:
        return f"[{self.error_code}] {self.message}"


# =============================================================================
# Geometry
# =============================================================================

class DegenerateNormal(SurfaceTextError):
    error_code = "GEO-001"
    category = DEGENERATE_GEOMETRY


class DegenerateQuad(SurfaceTextError):
    error_code = "GEO-002"
    category = DEGENERATE_GEOMETRY


class PointAtInfinity(SurfaceTextError):
    error_code = "GEO-003"
    category = DEGENERATE_GEOMETRY


# =============================================================================
# Normal maps
# =============================================================================

class InvalidImage(SurfaceTextError):
    error_code = "NRM-001"


class ZeroNormal(SurfaceTextError):
    error_code = "NRM-002"


class BadMagic(SurfaceTextError):
    error_code = "NRM-003"


class TruncatedFile(SurfaceTextError):
    error_code = "NRM-004"


class EmptyRoi(SurfaceTextError):
    error_code = "NRM-005"


class IncoherentNormals(SurfaceTextError):
    error_code = "NRM-006"
    category = DEGENERATE_GEOMETRY


# =============================================================================
# Mask generation
# =============================================================================

class UnsupportedCharacter(SurfaceTextError):
    error_code = "MSK-001"


class RoiTooSmall(SurfaceTextError):
    error_code = "MSK-002"


# =============================================================================
# Metrics / augmentation / IO
# =============================================================================

class DimensionMismatch(SurfaceTextError):
    error_code = "MET-001"


class MalformedRecord(SurfaceTextError):
    error_code = "MET-002"


class SingularAffine(SurfaceTextError):
    error_code = "AUG-001"


class IoError(SurfaceTextError):
    error_code = "IO-001"
    category = IO_FAILURE
