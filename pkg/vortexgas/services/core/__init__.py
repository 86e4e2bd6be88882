from vortexgas.services.core.hamiltonian import ConservedSet, affine_transform, conserved_set, hamiltonian
from vortexgas.services.core.units import circulation_quantum, to_physical_units
from vortexgas.services.core.vortex import Configuration, Vortex

__all__ = [
    "Configuration",
    "ConservedSet",
    "Vortex",
    "affine_transform",
    "circulation_quantum",
    "conserved_set",
    "hamiltonian",
    "to_physical_units",
]
