# vortexgas/errors.py
# -------------------------------------------------
# One exception hierarchy for the whole package.
# Every error renders to a machine-readable record so the CLI
# never has to crash bare.
# -------------------------------------------------

from __future__ import annotations

from typing import Any


class VortexGasError(Exception):
    """Base class. `code` is stable and ends up in error records."""

    code = "vortexgas_error"

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def to_record(self) -> dict[str, Any]:
        record: dict[str, Any] = {"error": self.code, "message": self.message}
        for key, value in self.context.items():
            record[key] = _jsonable(value)
        if self.__cause__ is not None:
            cause = self.__cause__
            record["cause"] = cause.to_record() if isinstance(cause, VortexGasError) else repr(cause)
        return record


class InvalidParameterError(VortexGasError, ValueError):
    code = "invalid_parameter"


class CoincidentVorticesError(VortexGasError):
    code = "coincident_vortices"


class GeometryError(VortexGasError):
    code = "geometry_error"


class SphereGeometryError(GeometryError):
    code = "sphere_geometry"


class InadmissibleError(VortexGasError):
    code = "inadmissible"


class StepSizeUnderflowError(VortexGasError):
    code = "step_size_underflow"


class ContourError(VortexGasError):
    code = "contour_through_singularity"


class QuadratureError(VortexGasError):
    code = "quadrature_failure"


class ModelValidationError(VortexGasError):
    code = "model_validation"


class DegenerateModelError(VortexGasError):
    code = "degenerate_model"


class SweepError(VortexGasError):
    code = "sweep_failure"


class ConfigError(VortexGasError):
    code = "config_error"


def _jsonable(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return str(value)
