# vortexgas/services/flow/grid.py
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from vortexgas.errors import InvalidParameterError
from vortexgas.services.flow.contour import log_derivative_values
from vortexgas.services.flow.divisor import FlowPotential

Window = tuple[float, float, float, float]  # xmin, xmax, ymin, ymax


@dataclass(frozen=True, slots=True)
class FieldGrid:
    x: NDArray[np.float64]            # (nx,)
    y: NDArray[np.float64]            # (ny,)
    values: NDArray[np.complex128]    # (ny, nx) f'/f; nan+nan*j where missing

    @property
    def missing(self) -> NDArray[np.bool_]:
        return np.isnan(self.values.real)

    def velocity(self) -> NDArray[np.complex128]:
        """u + i v of the induced flow, i * conj(f'/f)."""
        return 1j * np.conj(self.values)


def field_grid(
    potential: FlowPotential,
    window: Window,
    resolution: tuple[int, int],
    *,
    mask_radius: float = 1e-6,
) -> FieldGrid:
    """Sample f'/f on a regular grid; nodes within `mask_radius` of a divisor point are missing."""
    xmin, xmax, ymin, ymax = map(float, window)
    nx, ny = map(int, resolution)
    if not (nx >= 2 and ny >= 2):
        raise InvalidParameterError("grid resolution must be at least 2x2", nx=nx, ny=ny)
    if not (xmax > xmin and ymax > ymin):
        raise InvalidParameterError("grid window has zero area", window=list(window))

    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    Z = X + 1j * Y

    pts = potential.divisor.positions
    if pts.size:
        near = np.min(np.abs(Z[..., None] - pts), axis=-1) < mask_radius
    else:
        near = np.zeros(Z.shape, dtype=bool)

    with np.errstate(divide="ignore", invalid="ignore"):
        values = log_derivative_values(potential, Z)
    values = np.where(near, complex(np.nan, np.nan), values)
    return FieldGrid(xs, ys, values)
