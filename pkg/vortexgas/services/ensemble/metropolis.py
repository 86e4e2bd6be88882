# vortexgas/services/ensemble/metropolis.py
# -------------------------------------------------
# Single-vortex Metropolis sampling of the neutral +-1 vortex gas on the torus.
#   * energy: the pair Hamiltonian, updated in O(N) per move
#   * hard core: proposals closer than `hard_core` to any vortex are rejected
#     before the Boltzmann test (the bare energy is unbounded below)
#   * one sweep = N proposals, each on a uniformly chosen vortex
# -------------------------------------------------

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray

from vortexgas.errors import GeometryError, InvalidParameterError, SweepError, VortexGasError
from vortexgas.services.core.hamiltonian import hamiltonian
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.ensemble.pairing import pairing_from_arrays
from vortexgas.services.geometry.surfaces import (
    Geometry,
    kernel_values,
    minimum_image,
    reduce_positions,
    require_interacting,
)
from vortexgas.workers.pool import parallel_map

logger = logging.getLogger(__name__)

MAX_PLACEMENT_TRIES = 10_000


@dataclass(frozen=True, slots=True)
class EnsembleSpec:
    """
    One Metropolis chain. `None` lengths resolve against the shorter period:
    hard_core = 0.01 L, proposal_scale = 0.1 L, r_pair = 3 hard_core.
    `n_sweeps` counts measured sweeps; `n_burn` sweeps run before them.
    """

    n_pairs: int
    geometry: Geometry
    beta: float
    n_sweeps: int = 1000
    n_burn: int = 200
    proposal_scale: float | None = None
    hard_core: float | None = None
    r_pair: float | None = None
    seed: int = 0
    stream: int = 0

    def __post_init__(self) -> None:
        if self.geometry.is_sphere:
            require_interacting(self.geometry)
        if not self.geometry.is_torus:
            raise GeometryError("ensemble sampling needs a torus geometry", kind=self.geometry.kind.value)
        if isinstance(self.n_pairs, bool) or int(self.n_pairs) != self.n_pairs or self.n_pairs < 1:
            raise InvalidParameterError("n_pairs must be an integer >= 1", n_pairs=self.n_pairs)
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise InvalidParameterError("beta must be > 0", beta=self.beta)
        if self.n_sweeps < 1 or self.n_burn < 0:
            raise InvalidParameterError("need n_sweeps >= 1 and n_burn >= 0", n_sweeps=self.n_sweeps, n_burn=self.n_burn)
        if self.seed < 0 or self.stream < 0:
            raise InvalidParameterError("seed and stream must be >= 0", seed=self.seed, stream=self.stream)

        L = self.geometry.min_period
        hard_core = 0.01 * L if self.hard_core is None else float(self.hard_core)
        proposal = 0.1 * L if self.proposal_scale is None else float(self.proposal_scale)
        r_pair = 3.0 * hard_core if self.r_pair is None else float(self.r_pair)
        if not 0.0 < hard_core < proposal < L:
            raise InvalidParameterError(
                "need 0 < hard_core < proposal_scale < min(L1, L2)",
                hard_core=hard_core,
                proposal_scale=proposal,
                min_period=L,
            )
        if not r_pair > 0.0:
            raise InvalidParameterError("r_pair must be > 0", r_pair=r_pair)
        object.__setattr__(self, "n_pairs", int(self.n_pairs))
        object.__setattr__(self, "hard_core", hard_core)
        object.__setattr__(self, "proposal_scale", proposal)
        object.__setattr__(self, "r_pair", r_pair)

    @property
    def n_vortices(self) -> int:
        return 2 * self.n_pairs

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_pairs": self.n_pairs,
            "geometry": self.geometry.to_descriptor(),
            "beta": self.beta,
            "n_sweeps": self.n_sweeps,
            "n_burn": self.n_burn,
            "proposal_scale": self.proposal_scale,
            "hard_core": self.hard_core,
            "r_pair": self.r_pair,
            "seed": self.seed,
            "stream": self.stream,
        }


@dataclass(frozen=True, slots=True)
class EnsembleStats:
    beta: float
    mean_energy: float
    acceptance_rate: float          # among proposals that passed the hard core
    dipole_fraction: float
    mean_nn_distance: float
    samples: int
    proposals: int = 0
    hard_core_rejections: int = 0

    def to_row(self) -> dict[str, Any]:
        return {
            "beta": self.beta,
            "mean_energy": self.mean_energy,
            "acceptance": self.acceptance_rate,
            "dipole_fraction": self.dipole_fraction,
            "mean_nn_distance": self.mean_nn_distance,
        }


class Move(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    HARD_CORE = "hard_core"


def metropolis_acceptance(delta: float, beta: float) -> float:
    """min(1, exp(-beta * delta))."""
    if delta <= 0.0:
        return 1.0
    return math.exp(-beta * delta)


def random_neutral_positions(
    geometry: Geometry, n: int, hard_core: float, rng: np.random.Generator
) -> NDArray[np.complex128]:
    """Uniform positions on the torus, rejection-sampled to respect the hard core."""
    z = np.empty(n, dtype=np.complex128)
    for k in range(n):
        for _ in range(MAX_PLACEMENT_TRIES):
            cand = complex(rng.uniform(0.0, geometry.L1), rng.uniform(0.0, geometry.L2))
            if k == 0 or np.min(np.abs(minimum_image(geometry, z[:k] - cand))) >= hard_core:
                z[k] = cand
                break
        else:
            raise InvalidParameterError(
                "could not place vortices outside the hard core",
                n_vortices=n,
                hard_core=hard_core,
            )
    return z


class MetropolisChain:
    """Mutable chain state; `energy` is kept by incremental updates."""

    def __init__(self, spec: EnsembleSpec, initial: Configuration | None = None) -> None:
        self.spec = spec
        self.geometry = spec.geometry
        self.rng = spec.rng()
        if initial is None:
            self.q = np.tile(np.array([1.0, -1.0]), spec.n_pairs)
            self.z = random_neutral_positions(self.geometry, spec.n_vortices, spec.hard_core, self.rng)
        else:
            if not initial.is_neutral:
                raise InvalidParameterError("ensemble chains need a neutral configuration", Q=initial.net_charge)
            self.q = initial.charges.astype(np.float64)
            self.z = reduce_positions(self.geometry, initial.positions)
        self.energy = hamiltonian(self.config, eps=0.0) if len(self.z) else 0.0
        self.proposals = 0
        self.accepted = 0
        self.hard_core_rejections = 0

    @property
    def config(self) -> Configuration:
        return Configuration.from_arrays(self.z, self.q.astype(np.int64), self.geometry)

    def reset_counters(self) -> None:
        self.proposals = self.accepted = self.hard_core_rejections = 0

    def delta_energy(self, k: int, z_new: complex) -> float:
        """H(after moving vortex k to z_new) - H(now)."""
        others = np.arange(len(self.z)) != k
        zo, qo = self.z[others], self.q[others]
        K = kernel_values(self.geometry, np.concatenate([z_new - zo, self.z[k] - zo]))
        m = len(zo)
        return float(-self.q[k] * np.dot(qo, K[:m] - K[m:]))

    def step(self) -> Move:
        n = len(self.z)
        k = int(self.rng.integers(n))
        s = self.spec.proposal_scale
        dz = complex(self.rng.uniform(-s, s), self.rng.uniform(-s, s))
        z_new = complex(reduce_positions(self.geometry, [self.z[k] + dz])[0])
        self.proposals += 1

        others = np.arange(n) != k
        if np.min(np.abs(minimum_image(self.geometry, self.z[others] - z_new))) < self.spec.hard_core:
            self.hard_core_rejections += 1
            return Move.HARD_CORE

        dH = self.delta_energy(k, z_new)
        p = metropolis_acceptance(dH, self.spec.beta)
        if p < 1.0 and self.rng.random() >= p:
            return Move.REJECTED
        self.z[k] = z_new
        self.energy += dH
        self.accepted += 1
        return Move.ACCEPTED

    def sweep(self) -> None:
        for _ in range(len(self.z)):
            self.step()

    @property
    def acceptance_rate(self) -> float:
        passed = self.proposals - self.hard_core_rejections
        return self.accepted / passed if passed else 0.0


def run_chain(spec: EnsembleSpec, *, dump_every: int = 0) -> tuple[EnsembleStats, list[tuple[int, Configuration]]]:
    """Burn in, then measure; every `dump_every`-th measured sweep is kept as a snapshot."""
    chain = MetropolisChain(spec)
    for _ in range(spec.n_burn):
        chain.sweep()
    chain.reset_counters()

    energies = np.empty(spec.n_sweeps)
    fractions = np.empty(spec.n_sweeps)
    nn = np.empty(spec.n_sweeps)
    dumps: list[tuple[int, Configuration]] = []
    for s in range(spec.n_sweeps):
        chain.sweep()
        energies[s] = chain.energy
        fractions[s], nn[s] = pairing_from_arrays(spec.geometry, chain.z, chain.q, spec.r_pair)
        if dump_every and (s + 1) % dump_every == 0:
            dumps.append((s + 1, chain.config))

    stats = EnsembleStats(
        beta=spec.beta,
        mean_energy=float(np.mean(energies)),
        acceptance_rate=chain.acceptance_rate,
        dipole_fraction=float(np.mean(fractions)),
        mean_nn_distance=float(np.mean(nn)),
        samples=spec.n_sweeps,
        proposals=chain.proposals,
        hard_core_rejections=chain.hard_core_rejections,
    )
    logger.info(
        "beta=%g: <H>=%.6g acceptance=%.3f dipole_fraction=%.3f",
        spec.beta, stats.mean_energy, stats.acceptance_rate, stats.dipole_fraction,
    )
    return stats, dumps


def sample(spec: EnsembleSpec) -> EnsembleStats:
    return run_chain(spec)[0]


def _sample_job(spec: EnsembleSpec) -> EnsembleStats:
    try:
        return sample(spec)
    except VortexGasError as e:
        raise SweepError(f"sampling failed at beta={spec.beta:g}: {e.message}", beta=spec.beta) from e


def temperature_scan(template: EnsembleSpec, beta_grid: Sequence[float]) -> list[EnsembleStats]:
    """Independent chains per beta; chain i uses RNG stream template.stream + i."""
    betas = [float(b) for b in beta_grid]
    if not betas:
        raise InvalidParameterError("beta grid must be nonempty")
    if any(b2 < b1 for b1, b2 in zip(betas, betas[1:])):
        raise InvalidParameterError("beta grid must be ascending")
    specs = [replace(template, beta=b, stream=template.stream + i) for i, b in enumerate(betas)]
    return parallel_map(_sample_job, specs)
