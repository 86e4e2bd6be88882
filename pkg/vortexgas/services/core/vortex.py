# vortexgas/services/core/vortex.py
"""
Domain types for the point-vortex gas.

Reduced units throughout: hbar/m = 1, so the circulation quantum h/m is 2*pi
and the vortex Hamiltonian is H = -sum_{k>l} n_k n_l K(z_k, z_l).
Values are immutable once built and safe to hand between processes.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from vortexgas.errors import CoincidentVorticesError, InvalidParameterError
from vortexgas.services.geometry.surfaces import Geometry, compactify, minimum_image, reduce_positions


@dataclass(frozen=True, slots=True)
class Vortex:
    position: complex
    charge: int

    def __post_init__(self) -> None:
        if isinstance(self.charge, bool) or int(self.charge) != self.charge:
            raise InvalidParameterError("vortex charge must be an integer", charge=repr(self.charge))
        charge = int(self.charge)
        if charge == 0:
            raise InvalidParameterError("vortex charge must be a non-zero integer")
        position = complex(self.position)
        if not (math.isfinite(position.real) and math.isfinite(position.imag)):
            raise InvalidParameterError("vortex position must be finite", position=position)
        object.__setattr__(self, "charge", charge)
        object.__setattr__(self, "position", position)

    def to_record(self) -> dict[str, Any]:
        return {"re": self.position.real, "im": self.position.imag, "charge": self.charge}


@dataclass(frozen=True, slots=True)
class Configuration:
    """
    Ordered vortices bound to a geometry.

    On the torus every position is reduced into [0, L1) x [0, L2) at
    construction. Pairwise distinctness is checked by the operations that
    need finite pair energies (they take the coincidence epsilon).
    """

    vortices: tuple[Vortex, ...] = ()
    geometry: Geometry = field(default_factory=Geometry.plane)

    def __post_init__(self) -> None:
        vortices = tuple(self.vortices)
        for v in vortices:
            if not isinstance(v, Vortex):
                raise InvalidParameterError("configuration entries must be Vortex records", got=type(v).__name__)
        if self.geometry.is_torus and vortices:
            reduced = reduce_positions(self.geometry, [v.position for v in vortices])
            vortices = tuple(Vortex(complex(z), v.charge) for z, v in zip(reduced, vortices))
        object.__setattr__(self, "vortices", vortices)

    # ---- constructors
    @classmethod
    def from_arrays(cls, positions: ArrayLike, charges: ArrayLike, geometry: Geometry | None = None) -> Configuration:
        positions = np.asarray(positions, dtype=np.complex128).ravel()
        charges = np.asarray(charges).ravel()
        if positions.shape != charges.shape:
            raise InvalidParameterError(
                "positions and charges must have the same length",
                n_positions=positions.size,
                n_charges=charges.size,
            )
        vortices = tuple(Vortex(complex(z), int(n)) for z, n in zip(positions, charges))
        return cls(vortices, geometry or Geometry.plane())

    @classmethod
    def from_records(cls, records: Iterable[Mapping[str, Any]], geometry: Geometry | None = None) -> Configuration:
        """Records look like {"re": x, "im": y, "charge": n}."""
        vortices = []
        for i, r in enumerate(records):
            try:
                vortices.append(Vortex(complex(float(r["re"]), float(r["im"])), r["charge"]))
            except KeyError as e:
                raise InvalidParameterError(f"vortex record {i} is missing {e}", index=i) from None
        return cls(tuple(vortices), geometry or Geometry.plane())

    def to_records(self) -> list[dict[str, Any]]:
        return [v.to_record() for v in self.vortices]

    # ---- views
    def __len__(self) -> int:
        return len(self.vortices)

    def __iter__(self) -> Iterator[Vortex]:
        return iter(self.vortices)

    @property
    def positions(self) -> NDArray[np.complex128]:
        return np.array([v.position for v in self.vortices], dtype=np.complex128)

    @property
    def charges(self) -> NDArray[np.int64]:
        return np.array([v.charge for v in self.vortices], dtype=np.int64)

    @property
    def net_charge(self) -> int:
        # python ints: exact for any number of vortices
        return sum(v.charge for v in self.vortices)

    @property
    def is_neutral(self) -> bool:
        return self.net_charge == 0

    # ---- derived configurations
    def negated(self) -> Configuration:
        return Configuration(tuple(Vortex(v.position, -v.charge) for v in self.vortices), self.geometry)

    def with_positions(self, positions: ArrayLike) -> Configuration:
        positions = np.asarray(positions, dtype=np.complex128)
        return Configuration(
            tuple(Vortex(complex(z), v.charge) for z, v in zip(positions, self.vortices)),
            self.geometry,
        )

    def compactified(self, L1: float, L2: float, *, check_aspect: bool = True) -> Configuration:
        """Same vortices on the torus made by identifying opposite sides of an L1 x L2 rectangle."""
        return Configuration(self.vortices, compactify(self.geometry, L1, L2, check_aspect=check_aspect))

    def min_pair_distance(self) -> tuple[float, int, int]:
        """(distance, k, l) of the closest pair; (inf, -1, -1) for fewer than two vortices."""
        n = len(self.vortices)
        if n < 2:
            return math.inf, -1, -1
        i, j = np.triu_indices(n, 1)
        z = self.positions
        d = np.abs(minimum_image(self.geometry, z[i] - z[j]))
        m = int(np.argmin(d))
        return float(d[m]), int(i[m]), int(j[m])

    def check_distinct(self, eps: float) -> None:
        dist, k, l = self.min_pair_distance()
        if dist < eps:
            raise CoincidentVorticesError(
                f"vortices {k} and {l} are closer than eps={eps:g}",
                indices=[k, l],
                distance=dist,
                eps=eps,
            )
