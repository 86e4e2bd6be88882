# vortexgas/services/ensemble/pairing.py
from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from vortexgas.errors import InvalidParameterError
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.geometry.surfaces import Geometry, minimum_image


def nearest_opposite_distances(geometry: Geometry, z: NDArray[np.complex128], q: NDArray) -> NDArray[np.float64]:
    """Per vortex, the distance (minimum image on the torus) to the closest opposite-sign vortex."""
    d = np.abs(minimum_image(geometry, z[:, None] - z[None, :]))
    opposite = np.sign(q)[:, None] != np.sign(q)[None, :]
    return np.min(np.where(opposite, d, np.inf), axis=1)


def pairing_from_arrays(
    geometry: Geometry, z: NDArray[np.complex128], q: NDArray, r_pair: float
) -> tuple[float, float]:
    nn = nearest_opposite_distances(geometry, z, q)
    return float(np.mean(nn < r_pair)), float(np.mean(nn))


def pairing_stats(config: Configuration, r_pair: float) -> tuple[float, float]:
    """(dipole fraction, mean nearest-opposite distance) of a neutral configuration."""
    if not r_pair > 0.0:
        raise InvalidParameterError("pairing radius must be > 0", r_pair=r_pair)
    if len(config) == 0:
        raise InvalidParameterError("pairing statistics need at least one vortex pair")
    if not config.is_neutral:
        raise InvalidParameterError("pairing statistics need a neutral configuration", Q=config.net_charge)
    return pairing_from_arrays(config.geometry, config.positions, config.charges, r_pair)
