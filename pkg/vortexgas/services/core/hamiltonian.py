# vortexgas/services/core/hamiltonian.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from vortexgas.errors import GeometryError, InvalidParameterError
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.geometry.surfaces import kernel_values, minimum_image, require_interacting
from vortexgas.settings import S


@dataclass(frozen=True, slots=True)
class ConservedSet:
    energy: float
    total_charge: int
    # planar only; None on the torus
    dipole_moment: complex | None = None
    angular_moment: float | None = None

    def to_dict(self) -> dict[str, Any]:
        M = self.dipole_moment
        return {
            "H": self.energy,
            "Q": self.total_charge,
            "M_re": None if M is None else M.real,
            "M_im": None if M is None else M.imag,
            "I": self.angular_moment,
        }


def hamiltonian(config: Configuration, *, eps: float | None = None, core: float = 0.0) -> float:
    """
    H = -sum_{k>l} n_k n_l K(z_k, z_l), K the geometry's pair kernel.

    With `core > 0` pairs closer than `core` are evaluated at separation
    `core` (same direction), so coincident pairs give a finite value.
    """
    require_interacting(config.geometry)
    eps = S.coincidence_eps if eps is None else eps
    n = len(config)
    if n < 2:
        return 0.0
    if core < 0.0:
        raise InvalidParameterError("core must be >= 0", core=core)
    if core == 0.0:
        config.check_distinct(eps)
    z = config.positions
    q = config.charges.astype(np.float64)
    i, j = np.triu_indices(n, 1)
    dz = z[i] - z[j]
    if core > 0.0:
        dz = minimum_image(config.geometry, dz)
        r = np.abs(dz)
        unit = np.where(r > 0.0, dz / np.where(r > 0.0, r, 1.0), 1.0 + 0j)
        dz = np.where(r < core, core * unit, dz)
    K = kernel_values(config.geometry, dz)
    return float(-np.sum(q[i] * q[j] * K))


def conserved_set(config: Configuration, *, eps: float | None = None) -> ConservedSet:
    energy = hamiltonian(config, eps=eps)
    Q = config.net_charge
    if not config.geometry.is_plane:
        return ConservedSet(energy=energy, total_charge=Q)
    z = config.positions
    q = config.charges.astype(np.float64)
    M = complex(np.sum(q * z)) if len(config) else 0j
    I = float(np.sum(q * np.abs(z) ** 2)) if len(config) else 0.0
    return ConservedSet(energy=energy, total_charge=Q, dipole_moment=M, angular_moment=I)


def affine_transform(config: Configuration, eta: complex, xi: complex, *, tol: float = 1e-12) -> Configuration:
    """z_k -> eta z_k + xi with |eta| = 1; charges untouched. Planar only."""
    if not config.geometry.is_plane:
        raise GeometryError("the affine symmetry is stated on the complex plane", kind=config.geometry.kind.value)
    eta, xi = complex(eta), complex(xi)
    if abs(abs(eta) - 1.0) > tol:
        raise InvalidParameterError(f"rotation factor must be unimodular, |eta|={abs(eta)!r}", eta=eta)
    return config.with_positions(eta * config.positions + xi)
