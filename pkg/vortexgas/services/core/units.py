# vortexgas/services/core/units.py
"""
Reduced units: hbar/m = 1.

Energies are in units of hbar^2/m^2, circulations in units of hbar/m (so one
quantum h/m is 2*pi), times in units of L^2 m/hbar for a reduced length L.
The constant superfluid density is absorbed into these units.
"""

from __future__ import annotations

import math
from typing import Literal

from vortexgas.errors import InvalidParameterError

Quantity = Literal["energy", "circulation", "time", "length"]


def circulation_quantum() -> float:
    """h/m in reduced units."""
    return 2.0 * math.pi


def to_physical_units(value: float, kind: Quantity, *, hbar_over_m: float, length_unit: float = 1.0) -> float:
    """Convert a reduced quantity given hbar/m (SI m^2/s) and the reduced length unit (m)."""
    if hbar_over_m <= 0.0 or length_unit <= 0.0:
        raise InvalidParameterError("hbar/m and the length unit must be positive")
    if kind == "energy":
        # per unit mass-density prefactor, as in H = -(hbar^2/m^2) sum ...
        return value * hbar_over_m**2
    if kind == "circulation":
        return value * hbar_over_m
    if kind == "time":
        return value * length_unit**2 / hbar_over_m
    if kind == "length":
        return value * length_unit
    raise InvalidParameterError(f"unknown quantity kind {kind!r}")
