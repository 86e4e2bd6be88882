# vortexgas/services/dynamics/integrator.py
# -------------------------------------------------
# Classical RK4 with step doubling for the vortex equations of motion.
#   h <= eta_step * d_min^2      (a pair at distance d turns on a d^2 timescale)
#   local error from two half steps vs one full step, Richardson-corrected
# Conserved quantities are recomputed at every output time.
# -------------------------------------------------

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from vortexgas.errors import InadmissibleError, InvalidParameterError, StepSizeUnderflowError
from vortexgas.services.core.hamiltonian import ConservedSet, conserved_set
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.dynamics.annihilation import AnnihilationEvent, annihilate_arrays
from vortexgas.services.dynamics.velocity import min_pair_distance, velocities
from vortexgas.services.geometry.surfaces import Geometry, reduce_positions
from vortexgas.services.geometry.topology import admissibility

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class IntegratorOptions:
    eta_step: float = 0.05
    # local error control (step doubling)
    atol: float = 1e-12
    rtol: float = 1e-9
    min_step: float = 1e-12
    max_steps: int = 50_000_000
    # output grid: n_outputs evenly spaced states after t=0, or a fixed stride
    n_outputs: int = 100
    output_dt: float | None = None
    # off by default so conservation checks see the bare dynamics
    annihilation: bool = False
    r_core: float = 1e-3

    def __post_init__(self) -> None:
        if not self.eta_step > 0.0:
            raise InvalidParameterError("eta_step must be > 0", eta_step=self.eta_step)
        if not (self.atol > 0.0 and self.rtol >= 0.0):
            raise InvalidParameterError("tolerances must be positive", atol=self.atol, rtol=self.rtol)
        if self.n_outputs < 1:
            raise InvalidParameterError("n_outputs must be >= 1", n_outputs=self.n_outputs)
        if self.output_dt is not None and not self.output_dt > 0.0:
            raise InvalidParameterError("output_dt must be > 0", output_dt=self.output_dt)
        if not self.r_core > 0.0:
            raise InvalidParameterError("r_core must be > 0", r_core=self.r_core)


@dataclass(frozen=True, slots=True)
class TrajectoryState:
    time: float
    config: Configuration
    conserved: ConservedSet
    # events that happened since the previous output state
    events: tuple[AnnihilationEvent, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict[str, Any]:
        return {
            "time": self.time,
            "conserved": self.conserved.to_dict(),
            "events": [e.to_dict() for e in self.events],
        }


def output_times(t_end: float, options: IntegratorOptions) -> NDArray[np.float64]:
    if options.output_dt is None:
        return np.linspace(0.0, t_end, options.n_outputs + 1)
    ts = np.arange(0.0, t_end, options.output_dt)
    if ts[-1] < t_end:
        ts = np.append(ts, t_end)
    return ts


def _rk4(geometry: Geometry, z: NDArray, q: NDArray, h: float) -> NDArray:
    k1 = velocities(geometry, z, q)
    k2 = velocities(geometry, z + 0.5 * h * k1, q)
    k3 = velocities(geometry, z + 0.5 * h * k2, q)
    k4 = velocities(geometry, z + h * k3, q)
    return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class _Stepper:
    """Mutable integration state; lives only inside one `integrate` call."""

    def __init__(self, config: Configuration, options: IntegratorOptions) -> None:
        self.geometry = config.geometry
        self.options = options
        self.z = config.positions
        self.q = config.charges
        self.t = 0.0
        self.h = math.inf
        self.steps = 0
        self.pending: list[AnnihilationEvent] = []

    def annihilate(self) -> None:
        if not self.options.annihilation:
            return
        self.z, self.q, events = annihilate_arrays(self.geometry, self.z, self.q, self.options.r_core, time=self.t)
        self.pending.extend(events)

    def advance_to(self, t_target: float) -> None:
        opts = self.options
        while self.t < t_target:
            if self.z.size < 2:
                self.t = t_target
                break
            d_min = min_pair_distance(self.geometry, self.z)
            h_cap = opts.eta_step * d_min**2
            h_want = min(self.h, h_cap)
            if h_want < opts.min_step:
                raise StepSizeUnderflowError(
                    f"step size {h_want:.3g} below min_step at t={self.t:.6g} (d_min={d_min:.3g})",
                    time=self.t,
                    step=h_want,
                    d_min=d_min,
                )
            remaining = t_target - self.t
            last = h_want >= remaining
            h = remaining if last else h_want

            qf = self.q.astype(np.float64)
            full = _rk4(self.geometry, self.z, qf, h)
            half = _rk4(self.geometry, _rk4(self.geometry, self.z, qf, 0.5 * h), qf, 0.5 * h)
            err = float(np.max(np.abs(half - full))) / 15.0
            tol = opts.atol + opts.rtol * max(1.0, float(np.max(np.abs(self.z))))

            if err <= tol:
                self.z = reduce_positions(self.geometry, half + (half - full) / 15.0)
                self.t = t_target if last else self.t + h
                self.steps += 1
                if self.steps > opts.max_steps:
                    raise StepSizeUnderflowError("max_steps exceeded", time=self.t, steps=self.steps)
                grow = 5.0 if err == 0.0 else min(5.0, 0.9 * (tol / err) ** 0.2)
                # a clipped final step says nothing about the natural step size
                if not last:
                    self.h = h * grow
                self.annihilate()
            else:
                self.h = h * max(0.1, 0.9 * (tol / err) ** 0.2)
                logger.debug("step rejected t=%.6g h=%.3g err=%.3g tol=%.3g", self.t, h, err, tol)

    def state(self) -> TrajectoryState:
        config = Configuration.from_arrays(self.z, self.q, self.geometry)
        events = tuple(self.pending)
        self.pending = []
        return TrajectoryState(self.t, config, conserved_set(config, eps=0.0), events)


def integrate(
    initial: Configuration,
    t_end: float,
    options: IntegratorOptions | None = None,
) -> list[TrajectoryState]:
    """
    Integrate the vortex equations of motion from t=0 to `t_end`.

    Returns one state per output time (t=0 included). With annihilation on,
    opposite-sign pairs inside `r_core` are processed after every accepted
    step and logged on the next output state.
    """
    options = options or IntegratorOptions()
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise InvalidParameterError("t_end must be a positive finite number", t_end=t_end)
    report = admissibility(initial.geometry, initial)
    if not report.dynamics_supported:
        raise InadmissibleError(
            "; ".join(report.reasons) or f"genus {report.genus} surface does not support affine vortex dynamics",
            **report.to_dict(),
        )

    stepper = _Stepper(initial, options)
    stepper.annihilate()
    states = [stepper.state()]
    for t_out in output_times(t_end, options)[1:]:
        stepper.advance_to(float(t_out))
        states.append(stepper.state())

    logger.info(
        "integrated %d vortices to t=%.6g in %d steps (%d events)",
        len(initial), t_end, stepper.steps, sum(len(s.events) for s in states),
    )
    return states
