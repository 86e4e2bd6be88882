# vortexgas/services/dynamics/velocity.py
"""
First-order vortex equations of motion in reduced units,

    n_k dz_k/dt = -2i dH/d(conj z_k)   =>   dz_k/dt = 2i sum_{l!=k} n_l G(z_k - z_l)

with G = dK/d(conj dz) the kernel gradient of the geometry. On the plane this
is dz_k/dt = i sum_{l!=k} n_l / (conj z_k - conj z_l).
"""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from vortexgas.services.core.vortex import Configuration
from vortexgas.services.geometry.surfaces import Geometry, kernel_gradient, minimum_image, require_interacting
from vortexgas.settings import S


def velocities(geometry: Geometry, z: NDArray[np.complex128], q: NDArray[np.float64]) -> NDArray[np.complex128]:
    """Array kernel used by the integrator; no validation, distinct positions assumed."""
    n = z.size
    if n < 2:
        return np.zeros(n, dtype=np.complex128)
    dz = z[:, None] - z[None, :]
    off = ~np.eye(n, dtype=bool)
    G = np.zeros((n, n), dtype=np.complex128)
    G[off] = kernel_gradient(geometry, dz[off])
    return 2j * (G @ q)


def velocity_field(config: Configuration, *, eps: float | None = None) -> NDArray[np.complex128]:
    """dz_k/dt for every vortex of `config`, in list order."""
    require_interacting(config.geometry)
    config.check_distinct(S.coincidence_eps if eps is None else eps)
    return velocities(config.geometry, config.positions, config.charges.astype(np.float64))


def min_pair_distance(geometry: Geometry, z: NDArray[np.complex128]) -> float:
    n = z.size
    if n < 2:
        return float("inf")
    i, j = np.triu_indices(n, 1)
    return float(np.min(np.abs(minimum_image(geometry, z[i] - z[j]))))
