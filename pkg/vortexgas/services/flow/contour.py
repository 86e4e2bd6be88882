# vortexgas/services/flow/contour.py
# -------------------------------------------------
# Circulation by the argument principle:
#     (1/2 pi i) \oint f'/f dz  =  sum of orders enclosed
# evaluated with the trapezoidal rule on a circle (spectrally accurate for
# periodic integrands), doubling the node count until the rounded integer is
# stable and the residual is small.
# -------------------------------------------------

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from vortexgas.errors import ContourError, InvalidParameterError, QuadratureError
from vortexgas.services.flow.divisor import FlowPotential

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise InvalidParameterError("contour radius must be positive", radius=self.radius)

    def nodes(self, n_points: int) -> NDArray[np.complex128]:
        theta = 2.0 * np.pi * np.arange(n_points) / n_points
        return self.center + self.radius * np.exp(1j * theta)

    def encloses(self, z: ArrayLike) -> NDArray[np.bool_]:
        return np.abs(np.asarray(z) - self.center) < self.radius


@dataclass(frozen=True, slots=True)
class QuadratureOptions:
    max_points: int = 2**20
    residual_tol: float = 1e-6
    singularity_tol: float = 1e-9


@dataclass(frozen=True, slots=True)
class CirculationResult:
    winding: int
    raw: complex
    residual: float
    n_points: int

    @property
    def circulation(self) -> float:
        """Physical circulation (h/m) * winding, reduced units."""
        return 2.0 * math.pi * self.winding


def log_derivative_values(potential: FlowPotential, z: ArrayLike) -> NDArray[np.complex128]:
    """sum_k n_k / (z - z_k), vectorized over z; no singularity checks."""
    z = np.asarray(z, dtype=np.complex128)
    pts = potential.divisor.positions
    if pts.size == 0:
        return np.zeros_like(z)
    orders = potential.divisor.orders.astype(np.float64)
    return np.sum(orders / (z[..., None] - pts), axis=-1)


def log_derivative(potential: FlowPotential, z: complex) -> complex:
    """f'(z)/f(z) = sum_k n_k / (z - z_k)."""
    z = complex(z)
    pts = potential.divisor.positions
    if pts.size and np.any(pts == z):
        raise InvalidParameterError("log-derivative evaluated at a divisor point", z=z)
    return complex(log_derivative_values(potential, z))


def induced_velocity(potential: FlowPotential, z: complex) -> complex:
    """Velocity a probe vortex at z would get from the divisor: i * conj(f'/f)."""
    return 1j * np.conj(log_derivative(potential, z))


def _check_contour(potential: FlowPotential, contour: Circle, tol: float) -> None:
    pts = potential.divisor.positions
    if pts.size == 0:
        return
    gap = np.abs(np.abs(pts - contour.center) - contour.radius)
    k = int(np.argmin(gap))
    if gap[k] < tol:
        raise ContourError(
            "contour passes through a divisor point",
            point=complex(pts[k]),
            gap=float(gap[k]),
        )


def _trapezoid(potential: FlowPotential, contour: Circle, n_points: int) -> complex:
    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    e = np.exp(1j * theta)
    w = log_derivative_values(potential, contour.center + contour.radius * e)
    # (1/2 pi i) sum w * (i r e^{i theta}) * (2 pi / N)
    return complex(contour.radius * np.sum(w * e) / n_points)


def circulation_report(
    potential: FlowPotential,
    contour: Circle,
    n_points: int = 1024,
    *,
    options: QuadratureOptions | None = None,
) -> CirculationResult:
    options = options or QuadratureOptions()
    if n_points < 64:
        raise InvalidParameterError("circulation needs at least 64 quadrature nodes", n_points=n_points)
    _check_contour(potential, contour, options.singularity_tol)

    n = n_points
    raw = _trapezoid(potential, contour, n)
    while True:
        n2 = 2 * n
        raw2 = _trapezoid(potential, contour, n2)
        k1, k2 = round(raw.real), round(raw2.real)
        residual = abs(raw2 - k2)
        if k1 == k2 and residual < options.residual_tol:
            return CirculationResult(int(k2), raw2, float(residual), n2)
        if n2 >= options.max_points:
            raise QuadratureError(
                "trapezoidal circulation did not settle on an integer",
                raw=raw2,
                residual=float(residual),
                n_points=n2,
            )
        logger.debug("circulation refine n=%d raw=%s", n2, raw2)
        n, raw = n2, raw2


def circulation(potential: FlowPotential, contour: Circle, n_points: int = 1024) -> int:
    """Winding number of f around the circle = sum of enclosed orders."""
    return circulation_report(potential, contour, n_points).winding


def phase_winding(potential: FlowPotential, contour: Circle, n_points: int = 1024) -> int:
    """
    Net turns of arg f along the circle, from wrapped phase increments.

    arg f = sum_k n_k arg(z - z_k), so each divisor point contributes n_k times
    the turns of z - z_k; the product f itself is never formed.
    """
    if n_points < 64:
        raise InvalidParameterError("phase winding needs at least 64 samples", n_points=n_points)
    _check_contour(potential, contour, QuadratureOptions().singularity_tol)
    pts = potential.divisor.positions
    if pts.size == 0:
        return 0
    z = contour.nodes(n_points)
    z = np.append(z, z[0])
    rel = z[:, None] - pts[None, :]
    steps = np.angle(rel[1:] / rel[:-1])  # wrapped to (-pi, pi]
    turns = np.rint(np.sum(steps, axis=0) / (2.0 * np.pi)).astype(np.int64)
    return int(np.sum(turns * potential.divisor.orders))
