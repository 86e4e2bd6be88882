# vortexgas/services/landau/solver.py
# -------------------------------------------------
# Uniform (zero-gradient) sector of the Landau-Ginzburg free energy.
# With x = |Psi|^2 the uniform density is  a x + b x^2 + c x^3  and
# stationarity of Psi reads  Psi (a + 2b x + 3c x^2) = 0 .
# Constant fields are the harmonic minimizers on a compact surface, so
# spatially varying saddles are not searched for.
# -------------------------------------------------

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from vortexgas.errors import DegenerateModelError, InvalidParameterError, SweepError, VortexGasError
from vortexgas.services.landau.model import Branch, LGModel, OrderParameterResult
from vortexgas.workers.pool import parallel_map

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-12
MERGE_TOL = 1e-12


def uniform_free_energy(a: float, b: float, c: float, x: float) -> float:
    return a * x + b * x * x + c * x * x * x


def free_energy_density(model: LGModel, T: float, psi_sq: float, grad_sq: float = 0.0) -> float:
    """|grad Psi|^2/2m + a|Psi|^2 + b|Psi|^4 (+ c|Psi|^6)."""
    if psi_sq < 0.0 or grad_sq < 0.0:
        raise InvalidParameterError("psi_sq and grad_sq must be >= 0", psi_sq=psi_sq, grad_sq=grad_sq)
    model.validate(T)
    a, b, c = model.coefficients(T)
    return grad_sq / (2.0 * model.m) + uniform_free_energy(a, b, c, psi_sq)


def _real_quadratic_roots(A: float, B: float, C: float) -> list[float]:
    """Real roots of A x^2 + B x + C (A != 0), near-real pairs collapsed."""
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        re = -B / (2.0 * A)
        im = math.sqrt(-disc) / (2.0 * abs(A))
        return [re, re] if im <= IMAG_TOL * max(1.0, abs(re)) else []
    s = math.copysign(math.sqrt(disc), B) if B != 0.0 else math.sqrt(disc)
    qq = -0.5 * (B + s)
    if qq == 0.0:
        return [0.0, 0.0]
    return [qq / A, C / qq]


def stationary_from_coefficients(a: float, b: float, c: float) -> list[float]:
    if c == 0.0:
        if b == 0.0:
            if a != 0.0:
                raise DegenerateModelError("b = c = 0 with a != 0 has no stationary modulus", a=a)
            return [0.0]
        roots = [-a / (2.0 * b)]
    else:
        roots = _real_quadratic_roots(3.0 * c, 2.0 * b, a)

    out = [0.0]
    for x in sorted(r for r in roots if r > 0.0):
        if abs(x - out[-1]) > MERGE_TOL * max(1.0, abs(x)):
            out.append(x)
    return out


def stationary_moduli(model: LGModel, T: float) -> list[float]:
    """Candidate |Psi|^2 >= 0 solving Psi (a + 2b x + 3c x^2) = 0, ascending, 0 first."""
    model.validate(T)
    return stationary_from_coefficients(*model.coefficients(T))


def order_parameter(model: LGModel, T: float) -> OrderParameterResult:
    """Global minimizer of the uniform free energy over the stationary moduli."""
    roots = stationary_moduli(model, T)
    a, b, c = model.coefficients(T)
    best_x, best_f = 0.0, uniform_free_energy(a, b, c, 0.0)
    for x in roots[1:]:
        f = uniform_free_energy(a, b, c, x)
        if f < best_f:  # ties keep the smaller modulus
            best_x, best_f = x, f
    branch = Branch.SUPERFLUID if best_x > 0.0 else Branch.NORMAL
    return OrderParameterResult(T, math.sqrt(best_x), branch, best_f)


def _order_parameter_job(args: tuple[LGModel, float]) -> OrderParameterResult:
    model, T = args
    try:
        return order_parameter(model, T)
    except VortexGasError as e:
        raise SweepError(f"order parameter failed at T={T:g}: {e.message}", temperature=T) from e


def temperature_sweep(model: LGModel, T_grid: Sequence[float]) -> list[OrderParameterResult]:
    temps = [float(T) for T in T_grid]
    if not temps:
        raise InvalidParameterError("temperature grid must be nonempty")
    if any(t2 < t1 for t1, t2 in zip(temps, temps[1:])):
        raise InvalidParameterError("temperature grid must be ascending")
    results = parallel_map(_order_parameter_job, [(model, T) for T in temps])
    logger.info(
        "swept %d temperatures in [%g, %g]; %d superfluid",
        len(temps), temps[0], temps[-1], sum(r.branch is Branch.SUPERFLUID for r in results),
    )
    return results


@dataclass(frozen=True, slots=True)
class RelevanceReport:
    temperature: float
    nontrivial_roots: tuple[float, ...]
    nontrivial_minima: int
    gauge_group_rank: int
    implied_genus: int
    relevant: bool
    reason: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "temperature": self.temperature,
            "nontrivial_roots": list(self.nontrivial_roots),
            "nontrivial_minima": self.nontrivial_minima,
            "gauge_group_rank": self.gauge_group_rank,
            "implied_genus": self.implied_genus,
            "relevant": self.relevant,
            "reason": self.reason,
        }


def relevance_check(model: LGModel, T: float) -> RelevanceReport:
    """
    Advisory: a free energy is physically relevant on the torus only if it
    has at most one nontrivial stationary modulus. Each extra root enlarges
    the gauge group by a U(1) factor and would force a higher genus, while
    affine vortex dynamics pins the genus to 1.
    """
    a, b, c = model.coefficients(T)
    try:
        roots = stationary_from_coefficients(a, b, c)
    except DegenerateModelError:
        roots = [0.0]
    nontrivial = tuple(roots[1:])
    minima = sum(1 for x in nontrivial if 2.0 * b + 6.0 * c * x > 0.0)
    rank = len(nontrivial)
    relevant = rank <= 1
    if relevant:
        reason = f"{rank} nontrivial root(s): gauge group U(1)^{rank} fits genus 1"
    else:
        reason = (
            f"{rank} nontrivial roots enlarge the gauge group to U(1)^{rank}, "
            f"implying genus >= {rank}; affine dynamics needs genus 1"
        )
        logger.warning("relevance check failed at T=%g: %s", T, reason)
    return RelevanceReport(T, nontrivial, minima, rank, max(1, rank), relevant, reason)
