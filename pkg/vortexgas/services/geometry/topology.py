# vortexgas/services/geometry/topology.py
# -------------------------------------------------
# Genus arithmetic deciding where a vortex gas can exist at all.
#   c(kappa) = 2(g - 1)          canonical bundle Chern class
#   dim H^1(M, C) = 2g           flat bundles form (R/Z)^{2g}
# Affine vortex dynamics needs c(kappa) = 0, i.e. g = 1.
# -------------------------------------------------

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from vortexgas.errors import InvalidParameterError
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.geometry.surfaces import SPHERE_REASON, Geometry

NET_CHARGE_REASON = "net charge must vanish"


def canonical_chern(genus: int) -> int:
    if int(genus) != genus or genus < 0:
        raise InvalidParameterError(f"genus must be a non-negative integer, got {genus!r}", genus=genus)
    return 2 * (int(genus) - 1)


def vanishing_chern_group_dimension(genus: int) -> int:
    """Real dimension of the group of line bundles with vanishing Chern class."""
    canonical_chern(genus)  # validates
    return 2 * int(genus)


@dataclass(frozen=True, slots=True)
class AdmissibilityReport:
    geometry: str
    genus: int
    net_charge: int
    n_vortices: int
    h1_dimension: int
    canonical_chern: int
    affine_dynamics: bool
    admissible: bool
    reasons: tuple[str, ...] = field(default_factory=tuple)

    @property
    def dynamics_supported(self) -> bool:
        """Geometry-level gate for integrating the equations of motion (charge-blind)."""
        return self.affine_dynamics and not (self.geometry == "sphere" and self.n_vortices > 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "geometry": self.geometry,
            "genus": self.genus,
            "net_charge": self.net_charge,
            "n_vortices": self.n_vortices,
            "h1_dimension": self.h1_dimension,
            "canonical_chern": self.canonical_chern,
            "affine_dynamics": self.affine_dynamics,
            "dynamics_supported": self.dynamics_supported,
            "admissible": self.admissible,
            "reasons": list(self.reasons),
        }


def admissibility(geometry: Geometry, config: Configuration) -> AdmissibilityReport:
    """
    Decide whether `config` on `geometry` can host a superfluid transition.

    Report-valued; never raises. The plane is judged through its torus
    compactification (genus 1).
    """
    g = geometry.genus
    chern = canonical_chern(g)
    Q = config.net_charge
    reasons: list[str] = []

    if geometry.is_sphere and len(config) > 0:
        reasons.append(SPHERE_REASON)
    if Q != 0:
        reasons.append(f"{NET_CHARGE_REASON} (Q={Q})")

    return AdmissibilityReport(
        geometry=geometry.kind.value,
        genus=g,
        net_charge=Q,
        n_vortices=len(config),
        h1_dimension=vanishing_chern_group_dimension(g),
        canonical_chern=chern,
        affine_dynamics=chern == 0,
        admissible=not reasons,
        reasons=tuple(reasons),
    )
