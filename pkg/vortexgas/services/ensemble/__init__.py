from vortexgas.services.ensemble.metropolis import (
    EnsembleSpec,
    EnsembleStats,
    MetropolisChain,
    metropolis_acceptance,
    run_chain,
    sample,
    temperature_scan,
)
from vortexgas.services.ensemble.pairing import pairing_stats

__all__ = [
    "EnsembleSpec",
    "EnsembleStats",
    "MetropolisChain",
    "metropolis_acceptance",
    "pairing_stats",
    "run_chain",
    "sample",
    "temperature_scan",
]
