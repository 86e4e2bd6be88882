from vortexgas.services.flow.contour import (
    Circle,
    CirculationResult,
    circulation,
    circulation_report,
    induced_velocity,
    log_derivative,
    phase_winding,
)
from vortexgas.services.flow.divisor import (
    Divisor,
    FlowPotential,
    chern_class,
    divisor_from_configuration,
    multiply,
    potential_from_configuration,
)
from vortexgas.services.flow.grid import FieldGrid, field_grid

__all__ = [
    "Circle",
    "CirculationResult",
    "Divisor",
    "FieldGrid",
    "FlowPotential",
    "chern_class",
    "circulation",
    "circulation_report",
    "divisor_from_configuration",
    "field_grid",
    "induced_velocity",
    "log_derivative",
    "multiply",
    "phase_winding",
    "potential_from_configuration",
]
