# vortexgas/services/dynamics/audit.py
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from vortexgas.errors import InvalidParameterError
from vortexgas.services.core.hamiltonian import ConservedSet, conserved_set
from vortexgas.services.core.vortex import Configuration


@dataclass(frozen=True, slots=True)
class Drift:
    max_abs: float
    # None when the t=0 value is zero
    max_rel: float | None

    def to_dict(self) -> dict[str, Any]:
        return {"max_abs": self.max_abs, "max_rel": self.max_rel}


@dataclass(frozen=True, slots=True)
class ConservationReport:
    n_states: int
    t_start: float
    t_end: float
    drifts: dict[str, Drift]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_states": self.n_states,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "drifts": {k: d.to_dict() for k, d in self.drifts.items()},
        }


def _drift(values: list[complex | float]) -> Drift:
    ref = values[0]
    worst = max(abs(v - ref) for v in values)
    return Drift(float(worst), float(worst / abs(ref)) if ref != 0 else None)


def conservation_report(
    snapshots: Sequence[tuple[float, Configuration]],
) -> ConservationReport:
    """Recompute H, Q (and M, I on the plane) along stored snapshots; drifts are against the first."""
    if not snapshots:
        raise InvalidParameterError("conservation audit needs at least one snapshot")
    sets: list[ConservedSet] = [conserved_set(c, eps=0.0) for _, c in snapshots]
    drifts = {
        "H": _drift([s.energy for s in sets]),
        "Q": _drift([float(s.total_charge) for s in sets]),
    }
    if all(s.dipole_moment is not None for s in sets):
        drifts["M"] = _drift([s.dipole_moment for s in sets])
        drifts["I"] = _drift([s.angular_moment for s in sets])
    times = [t for t, _ in snapshots]
    if any(not math.isfinite(d.max_abs) for d in drifts.values()):
        raise InvalidParameterError("conserved quantities are not finite along the trajectory")
    return ConservationReport(len(snapshots), times[0], times[-1], drifts)
