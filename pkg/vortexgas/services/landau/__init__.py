from vortexgas.services.landau.model import Affine, Branch, LGModel, OrderParameterResult
from vortexgas.services.landau.solver import (
    RelevanceReport,
    free_energy_density,
    order_parameter,
    relevance_check,
    stationary_moduli,
    temperature_sweep,
)

__all__ = [
    "Affine",
    "Branch",
    "LGModel",
    "OrderParameterResult",
    "RelevanceReport",
    "free_energy_density",
    "order_parameter",
    "relevance_check",
    "stationary_moduli",
    "temperature_sweep",
]
