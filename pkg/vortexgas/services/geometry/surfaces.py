# vortexgas/services/geometry/surfaces.py
# -------------------------------------------------
# Surfaces a vortex gas can live on: the plane, the rectangular torus
# (plane with opposite sides identified) and the sphere, which is only
# represented so that it can be rejected.
# -------------------------------------------------

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from vortexgas.errors import CoincidentVorticesError, GeometryError, InvalidParameterError, SphereGeometryError
from vortexgas.services.geometry.theta import nome, theta1

SPHERE_REASON = "genus 0: no nontrivial vanishing-Chern-class bundles"

ASPECT_MIN = 0.1
ASPECT_MAX = 10.0


class GeometryKind(str, Enum):
    PLANE = "plane"
    TORUS = "torus"
    SPHERE = "sphere"


@dataclass(frozen=True, slots=True)
class Geometry:
    kind: GeometryKind
    L1: float | None = None
    L2: float | None = None
    # keeps the theta q-series well conditioned; switch off deliberately
    check_aspect: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", GeometryKind(self.kind))
        if self.kind is not GeometryKind.TORUS:
            if self.L1 is not None or self.L2 is not None:
                raise InvalidParameterError(f"{self.kind.value} geometry takes no periods", kind=self.kind.value)
            return
        if self.L1 is None or self.L2 is None:
            raise InvalidParameterError("torus needs both periods L1 and L2")
        L1, L2 = float(self.L1), float(self.L2)
        if not (np.isfinite(L1) and np.isfinite(L2) and L1 > 0.0 and L2 > 0.0):
            raise InvalidParameterError("torus periods must be finite and > 0", L1=L1, L2=L2)
        if self.check_aspect and not (ASPECT_MIN <= L2 / L1 <= ASPECT_MAX):
            raise InvalidParameterError(
                f"aspect ratio L2/L1={L2 / L1:.4g} outside [{ASPECT_MIN}, {ASPECT_MAX}]; "
                "pass check_aspect=False to override",
                L1=L1,
                L2=L2,
            )
        object.__setattr__(self, "L1", L1)
        object.__setattr__(self, "L2", L2)

    # ---- constructors
    @classmethod
    def plane(cls) -> Geometry:
        return cls(GeometryKind.PLANE)

    @classmethod
    def torus(cls, L1: float, L2: float, *, check_aspect: bool = True) -> Geometry:
        return cls(GeometryKind.TORUS, L1, L2, check_aspect)

    @classmethod
    def sphere(cls) -> Geometry:
        return cls(GeometryKind.SPHERE)

    @classmethod
    def from_descriptor(cls, d: dict[str, Any]) -> Geometry:
        """{"kind": "plane"|"torus"|"sphere", "L1": ..., "L2": ...}"""
        kind = GeometryKind(d.get("kind", "plane"))
        if kind is GeometryKind.TORUS:
            return cls.torus(d["L1"], d["L2"], check_aspect=d.get("check_aspect", True))
        return cls(kind)

    def to_descriptor(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value}
        if self.is_torus:
            out.update(L1=self.L1, L2=self.L2)
        return out

    # ---- derived
    @property
    def is_plane(self) -> bool:
        return self.kind is GeometryKind.PLANE

    @property
    def is_torus(self) -> bool:
        return self.kind is GeometryKind.TORUS

    @property
    def is_sphere(self) -> bool:
        return self.kind is GeometryKind.SPHERE

    @property
    def genus(self) -> int:
        # the plane enters the dynamics through its torus compactification
        return 0 if self.is_sphere else 1

    @property
    def nome(self) -> float:
        if not self.is_torus:
            raise GeometryError("nome is only defined on the torus", kind=self.kind.value)
        return nome(self.L1, self.L2)

    @property
    def min_period(self) -> float:
        if not self.is_torus:
            raise GeometryError("periods are only defined on the torus", kind=self.kind.value)
        return min(self.L1, self.L2)


def require_interacting(geometry: Geometry) -> None:
    """Plane and torus carry a pair interaction; the sphere admits no configurations."""
    if geometry.is_sphere:
        raise SphereGeometryError(
            f"sphere geometry admits no vortex configurations ({SPHERE_REASON})",
            genus=0,
        )


def compactify(geometry: Geometry, L1: float, L2: float, *, check_aspect: bool = True) -> Geometry:
    """Identify opposite sides of an L1 x L2 rectangle of the plane."""
    if geometry.is_torus:
        return geometry
    require_interacting(geometry)
    return Geometry.torus(L1, L2, check_aspect=check_aspect)


def reduce_position(geometry: Geometry, z: complex) -> complex:
    """Canonical representative of z in [0, L1) x [0, L2)."""
    if not geometry.is_torus:
        raise GeometryError("reduce_position needs a torus geometry", kind=geometry.kind.value)
    return complex(reduce_positions(geometry, np.asarray([z]))[0])


def reduce_positions(geometry: Geometry, z: ArrayLike) -> NDArray[np.complex128]:
    z = np.asarray(z, dtype=np.complex128)
    if not geometry.is_torus:
        return z
    x = np.mod(z.real, geometry.L1)
    y = np.mod(z.imag, geometry.L2)
    # np.mod may round tiny negatives up to the period itself
    x = np.where(x >= geometry.L1, 0.0, x)
    y = np.where(y >= geometry.L2, 0.0, y)
    return x + 1j * y


def minimum_image(geometry: Geometry, dz: ArrayLike) -> NDArray[np.complex128]:
    """Shortest lattice representative of a displacement (identity on the plane)."""
    dz = np.asarray(dz, dtype=np.complex128)
    if not geometry.is_torus:
        return dz
    dx = dz.real - geometry.L1 * np.round(dz.real / geometry.L1)
    dy = dz.imag - geometry.L2 * np.round(dz.imag / geometry.L2)
    return dx + 1j * dy


def kernel_values(geometry: Geometry, dz: ArrayLike) -> NDArray[np.float64]:
    """
    Pair kernel K(dz), vectorized, no coincidence checks.

    plane: log|dz|
    torus: log|theta1(pi dz / L1; q)| - pi (Im dz)^2 / (L1 L2)   (C0 = 0)
    """
    require_interacting(geometry)
    dz = np.asarray(dz, dtype=np.complex128)
    if geometry.is_plane:
        return np.log(np.abs(dz))
    d = minimum_image(geometry, dz)
    th, _ = theta1(np.pi * d / geometry.L1, geometry.nome)
    return np.log(np.abs(th)) - np.pi * d.imag**2 / (geometry.L1 * geometry.L2)


def kernel_gradient(geometry: Geometry, dz: ArrayLike) -> NDArray[np.complex128]:
    """
    dK/d(conj dz), vectorized.

    plane: 1 / (2 conj(dz))
    torus: (pi / 2L1) conj(theta1'/theta1) - i pi Im(dz) / (L1 L2)
    """
    require_interacting(geometry)
    dz = np.asarray(dz, dtype=np.complex128)
    if geometry.is_plane:
        return 0.5 / np.conj(dz)
    d = minimum_image(geometry, dz)
    th, dth = theta1(np.pi * d / geometry.L1, geometry.nome)
    return (np.pi / (2.0 * geometry.L1)) * np.conj(dth / th) - 1j * np.pi * d.imag / (geometry.L1 * geometry.L2)


def pair_kernel(geometry: Geometry, z: complex, w: complex, *, eps: float = 1e-12) -> float:
    """Interaction kernel between two points; symmetric in (z, w)."""
    require_interacting(geometry)
    dz = complex(z) - complex(w)
    dist = float(np.abs(minimum_image(geometry, dz)))
    if dist < eps:
        raise CoincidentVorticesError("pair kernel evaluated at coincident points", distance=dist, eps=eps)
    return float(kernel_values(geometry, dz))


def pair_kernel_gradient(geometry: Geometry, dz: complex, *, eps: float = 1e-12) -> complex:
    require_interacting(geometry)
    dist = float(np.abs(minimum_image(geometry, dz)))
    if dist < eps:
        raise CoincidentVorticesError("kernel gradient evaluated at coincident points", distance=dist, eps=eps)
    return complex(kernel_gradient(geometry, dz))


def pair_distances(geometry: Geometry, z: ArrayLike, w: ArrayLike) -> NDArray[np.float64]:
    return np.abs(minimum_image(geometry, np.asarray(z) - np.asarray(w)))
