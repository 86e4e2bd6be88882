# vortexgas/services/dynamics/annihilation.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from vortexgas.errors import InvalidParameterError
from vortexgas.services.core.hamiltonian import hamiltonian
from vortexgas.services.core.vortex import Configuration, Vortex
from vortexgas.services.geometry.surfaces import Geometry, minimum_image, reduce_positions

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class AnnihilationEvent:
    time: float
    removed: tuple[Vortex, Vortex]
    separation: float
    energy_before: float
    energy_after: float
    merged: Vortex | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "time": self.time,
            "removed": [v.to_record() for v in self.removed],
            "separation": self.separation,
            "energy_before": self.energy_before,
            "energy_after": self.energy_after,
            "merged": None if self.merged is None else self.merged.to_record(),
        }


def _closest_opposite_pair(geometry: Geometry, z: NDArray, q: NDArray, r_core: float) -> tuple[int, int, float] | None:
    n = z.size
    if n < 2:
        return None
    i, j = np.triu_indices(n, 1)
    opposite = q[i] * q[j] < 0
    if not opposite.any():
        return None
    d = np.abs(minimum_image(geometry, z[i] - z[j]))
    d = np.where(opposite, d, np.inf)
    m = int(np.argmin(d))  # first minimum: lowest (k, l) on ties
    if d[m] >= r_core:
        return None
    return int(i[m]), int(j[m]), float(d[m])


def _energy(geometry: Geometry, z: NDArray, q: NDArray, r_core: float) -> float:
    if geometry.is_sphere:
        return float("nan")
    # pairs inside the core count at separation r_core
    return hamiltonian(Configuration.from_arrays(z, q, geometry), eps=0.0, core=r_core)


def annihilate_arrays(
    geometry: Geometry,
    z: NDArray[np.complex128],
    q: NDArray[np.int64],
    r_core: float,
    *,
    time: float = 0.0,
) -> tuple[NDArray[np.complex128], NDArray[np.int64], list[AnnihilationEvent]]:
    """Array form of `annihilate`, shared with the integrator."""
    if not r_core > 0.0:
        raise InvalidParameterError("r_core must be > 0", r_core=r_core)
    z = np.asarray(z, dtype=np.complex128).copy()
    q = np.asarray(q, dtype=np.int64).copy()
    events: list[AnnihilationEvent] = []

    while (pair := _closest_opposite_pair(geometry, z, q, r_core)) is not None:
        k, l, sep = pair
        before = _energy(geometry, z, q, r_core)
        removed = (Vortex(complex(z[k]), int(q[k])), Vortex(complex(z[l]), int(q[l])))
        total = int(q[k] + q[l])
        merged: Vortex | None = None
        keep = np.ones(z.size, dtype=bool)
        if total == 0:
            keep[[k, l]] = False
        else:
            wk, wl = abs(int(q[k])), abs(int(q[l]))
            d = complex(minimum_image(geometry, z[l] - z[k]))
            pos = complex(reduce_positions(geometry, [z[k] + d * wl / (wk + wl)])[0])
            z[k], q[k] = pos, total
            keep[l] = False
            merged = Vortex(pos, total)
        z, q = z[keep], q[keep]
        after = _energy(geometry, z, q, r_core)
        events.append(AnnihilationEvent(time, removed, sep, before, after, merged))
        logger.info(
            "annihilation t=%.6g charges=(%+d,%+d) sep=%.3g H %.6g -> %.6g",
            time, removed[0].charge, removed[1].charge, sep, before, after,
        )
    return z, q, events


def annihilate(
    config: Configuration,
    r_core: float,
    *,
    time: float = 0.0,
) -> tuple[Configuration, list[AnnihilationEvent]]:
    """
    Remove (or merge) opposite-sign pairs closer than `r_core`.

    The closest qualifying pair goes first. A pair whose charges cancel is
    removed; otherwise it becomes one vortex of charge n_k + n_l at the
    |n|-weighted midpoint. Repeats until no opposite-sign pair is inside
    the core. Q is conserved exactly.
    """
    z, q, events = annihilate_arrays(config.geometry, config.positions, config.charges, r_core, time=time)
    return Configuration.from_arrays(z, q, config.geometry), events
