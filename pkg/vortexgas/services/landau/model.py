# vortexgas/services/landau/model.py
from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any

from vortexgas.errors import InvalidParameterError, ModelValidationError

TemperatureFn = Callable[[float], float]


@dataclass(frozen=True, slots=True)
class Affine:
    """value + slope * (T - about); picklable, so sweeps can fan out to processes."""

    value: float = 0.0
    slope: float = 0.0
    about: float = 0.0

    def __call__(self, T: float) -> float:
        return self.value + self.slope * (T - self.about)


@dataclass(frozen=True, slots=True)
class LGModel:
    """
    Truncated free energy F = |grad Psi|^2/2m + a(T)|Psi|^2 + b(T)|Psi|^4 + c(T)|Psi|^6.

    The sign structure (b > 0 above T_c, a/b < 0 below) is checked
    at every queried temperature by `validate`.
    """

    a_fn: TemperatureFn
    b_fn: TemperatureFn
    c_fn: TemperatureFn | None = None
    m: float = 1.0
    T_c: float = 1.0
    name: str = "custom"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.m) and self.m > 0.0):
            raise InvalidParameterError("mass parameter m must be > 0", m=self.m)
        if not (math.isfinite(self.T_c) and self.T_c > 0.0):
            raise InvalidParameterError("critical temperature T_c must be > 0", T_c=self.T_c)

    # ---- constructors
    @classmethod
    def quadratic(cls, a0: float = 1.0, b: float = 1.0, *, T_c: float = 1.0, m: float = 1.0, c: float | None = None) -> LGModel:
        """a(T) = a0 (T - T_c), constant b (and c if given)."""
        return cls(
            Affine(0.0, a0, T_c),
            Affine(b),
            None if c is None else Affine(c),
            m=m,
            T_c=T_c,
            name="quadratic" if c is None else "sextic",
        )

    @classmethod
    def constant(cls, a: float, b: float, c: float | None = None, *, T_c: float = 1.0, m: float = 1.0) -> LGModel:
        return cls(Affine(a), Affine(b), None if c is None else Affine(c), m=m, T_c=T_c, name="constant")

    @classmethod
    def from_params(cls, params: Mapping[str, Any], *, name: str = "custom") -> LGModel:
        """{a0 | a, b, c?, m, Tc} as in the run document and the preset file."""
        T_c = float(params.get("Tc", 1.0))
        m = float(params.get("m", 1.0))
        c = params.get("c")
        c_fn = None if c is None else Affine(float(c))
        if "a" in params:
            a_fn = Affine(float(params["a"]))
        else:
            a_fn = Affine(0.0, float(params.get("a0", 1.0)), T_c)
        return cls(a_fn, Affine(float(params.get("b", 1.0))), c_fn, m=m, T_c=T_c, name=name)

    # ---- evaluation
    def coefficients(self, T: float) -> tuple[float, float, float]:
        c = 0.0 if self.c_fn is None else float(self.c_fn(T))
        return float(self.a_fn(T)), float(self.b_fn(T)), c

    def validate(self, T: float) -> None:
        if not math.isfinite(T):
            raise ModelValidationError("temperature must be finite", temperature=T)
        a, b, _ = self.coefficients(T)
        if T > self.T_c and not b > 0.0:
            raise ModelValidationError(
                f"b(T) must be > 0 above T_c (b={b:g} at T={T:g})",
                temperature=T,
                condition="b>0 for T>Tc",
            )
        if T < self.T_c and not (b != 0.0 and a / b < 0.0):
            raise ModelValidationError(
                f"a(T)/b(T) must be < 0 below T_c (a={a:g}, b={b:g} at T={T:g})",
                temperature=T,
                condition="a/b<0 for T<Tc",
            )


class Branch(str, Enum):
    NORMAL = "normal"
    SUPERFLUID = "superfluid"


@dataclass(frozen=True, slots=True)
class OrderParameterResult:
    temperature: float
    psi_min: float
    branch: Branch
    free_energy_min: float

    def __post_init__(self) -> None:
        if (self.psi_min == 0.0) != (self.branch is Branch.NORMAL):
            raise InvalidParameterError("psi_min = 0 exactly when the branch is normal", psi_min=self.psi_min)

    def to_row(self) -> dict[str, Any]:
        return {"T": self.temperature, "psi_min": self.psi_min, "branch": self.branch.value, "F_min": self.free_energy_min}
