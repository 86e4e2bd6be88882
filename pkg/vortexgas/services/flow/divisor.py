# vortexgas/services/flow/divisor.py
"""
Divisors and flow potentials.

A flow potential f(z) = prod_k (z - z_k)^{n_k} is only ever held through its
divisor sum_k n_k [z_k]: the product overflows for many points or large |z|,
and everything downstream needs just f'/f and order bookkeeping. Holding the
divisor also makes the potential exact modulo non-vanishing holomorphic factors.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray

from vortexgas.errors import InvalidParameterError
from vortexgas.services.core.vortex import Configuration


@dataclass(frozen=True, slots=True)
class Divisor:
    points: tuple[tuple[complex, int], ...] = ()

    def __post_init__(self) -> None:
        clean: list[tuple[complex, int]] = []
        seen: set[complex] = set()
        for p, order in self.points:
            p = complex(p)
            if not (math.isfinite(p.real) and math.isfinite(p.imag)):
                raise InvalidParameterError("divisor point must be finite", point=p)
            if isinstance(order, bool) or int(order) != order or int(order) == 0:
                raise InvalidParameterError("divisor orders must be non-zero integers", point=p, order=repr(order))
            if p in seen:
                raise InvalidParameterError("divisor points must be distinct", point=p)
            seen.add(p)
            clean.append((p, int(order)))
        object.__setattr__(self, "points", tuple(clean))

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, Any]]) -> Divisor:
        """Records look like {"re": x, "im": y, "order": n}."""
        return cls(tuple((complex(float(r["re"]), float(r["im"])), r["order"]) for r in records))

    def to_records(self) -> list[dict[str, Any]]:
        return [{"re": p.real, "im": p.imag, "order": n} for p, n in self.points]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def positions(self) -> NDArray[np.complex128]:
        return np.array([p for p, _ in self.points], dtype=np.complex128)

    @property
    def orders(self) -> NDArray[np.int64]:
        return np.array([n for _, n in self.points], dtype=np.int64)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.points)

    def dipole_moment(self) -> complex:
        """sum_k n_k z_k. Kept apart from the formal sum it is computed from."""
        return complex(sum(n * p for p, n in self.points))


@dataclass(frozen=True, slots=True)
class FlowPotential:
    divisor: Divisor = Divisor()

    @classmethod
    def from_points(cls, points: Iterable[tuple[complex, int]]) -> FlowPotential:
        return cls(Divisor(tuple(points)))


def divisor_from_configuration(config: Configuration) -> Divisor:
    return Divisor(tuple((v.position, v.charge) for v in config))


def potential_from_configuration(config: Configuration) -> FlowPotential:
    return FlowPotential(divisor_from_configuration(config))


def chern_class(divisor: Divisor) -> int:
    """c = sum of orders; the net charge of the generating configuration."""
    return divisor.degree


def multiply(a: FlowPotential, b: FlowPotential) -> FlowPotential:
    """nu_p(fg) = nu_p(f) + nu_p(g); points whose orders cancel drop out."""
    acc: dict[complex, int] = {}
    for p, n in a.divisor.points + b.divisor.points:
        acc[p] = acc.get(p, 0) + n
    return FlowPotential(Divisor(tuple((p, n) for p, n in acc.items() if n != 0)))
