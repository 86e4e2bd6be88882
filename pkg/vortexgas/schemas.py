# vortexgas/schemas.py
# -------------------------------------------------
# Run documents: one JSON file per run, validated strictly.
# Unknown keys are rejected at every level; the resolved document is
# echoed verbatim into manifest.json.
# -------------------------------------------------

from __future__ import annotations

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Command = Literal["simulate", "sample", "scan", "field", "order-parameter", "check"]
COMMANDS: tuple[str, ...] = ("simulate", "sample", "scan", "field", "order-parameter", "check")


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CompactifyIn(Strict):
    L1: float = Field(gt=0)
    L2: float = Field(gt=0)


class GeometryIn(Strict):
    kind: Literal["plane", "torus", "sphere"] = "plane"
    L1: Optional[float] = None
    L2: Optional[float] = None
    check_aspect: bool = True
    # plane only: identify the sides of an L1 x L2 rectangle before running
    compactify: Optional[CompactifyIn] = None


class VortexIn(Strict):
    re: float
    im: float
    charge: int


class DivisorPointIn(Strict):
    re: float
    im: float
    order: int


class DynamicsIn(Strict):
    t_end: float = Field(default=1.0, gt=0)
    n_outputs: int = Field(default=100, ge=1)
    output_dt: Optional[float] = Field(default=None, gt=0)
    eta_step: float = Field(default=0.05, gt=0)
    atol: float = Field(default=1e-12, gt=0)
    rtol: float = Field(default=1e-9, ge=0)
    min_step: float = Field(default=1e-12, gt=0)
    annihilation: bool = False
    r_core: float = Field(default=1e-3, gt=0)


class EnsembleIn(Strict):
    n_pairs: int = Field(default=8, ge=1)
    beta: float = Field(default=1.0, gt=0)
    n_sweeps: int = Field(default=1000, ge=1)
    n_burn: int = Field(default=200, ge=0)
    proposal_scale: Optional[float] = Field(default=None, gt=0)
    hard_core: Optional[float] = Field(default=None, gt=0)
    r_pair: Optional[float] = Field(default=None, gt=0)
    # sample: keep every k-th measured sweep as a snapshot (0 = none)
    dump_every: int = Field(default=0, ge=0)
    # scan: ascending inverse temperatures
    betas: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0, 4.0, 8.0])


class ContourIn(Strict):
    center_re: float = 0.0
    center_im: float = 0.0
    radius: float = Field(default=1.0, gt=0)


class FieldIn(Strict):
    window: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    resolution: tuple[int, int] = (101, 101)
    # defaults to the vortices of the document
    divisor: Optional[list[DivisorPointIn]] = None
    contours: list[ContourIn] = Field(default_factory=list)
    n_points: int = Field(default=1024, ge=64)


class ModelParamsIn(Strict):
    a0: Optional[float] = None
    a: Optional[float] = None
    b: float = 1.0
    c: Optional[float] = None
    m: float = Field(default=1.0, gt=0)
    Tc: float = Field(default=1.0, gt=0)


class LandauIn(Strict):
    preset: Optional[str] = "quadratic"
    # overrides the preset when given
    params: Optional[ModelParamsIn] = None
    T_min: float = 0.0
    T_max: float = 2.0
    n_points: int = Field(default=101, ge=1)
    temperatures: Optional[list[float]] = None


class CheckIn(Strict):
    # trajectory CSV written by `simulate`; relative paths resolve against the config file
    trajectory: Optional[str] = None


class RunDocument(Strict):
    command: Optional[Command] = None
    seed: int = Field(default=0, ge=0)
    geometry: GeometryIn = Field(default_factory=GeometryIn)
    vortices: list[VortexIn] = Field(default_factory=list)
    dynamics: DynamicsIn = Field(default_factory=DynamicsIn)
    ensemble: EnsembleIn = Field(default_factory=EnsembleIn)
    field: FieldIn = Field(default_factory=FieldIn)
    landau: LandauIn = Field(default_factory=LandauIn)
    check: CheckIn = Field(default_factory=CheckIn)


class RunConfig(Strict):
    """What the command line asked for, before the document is read."""

    command: Command
    config: Optional[Path] = None
    out: Path = Path("out")
    seed: Optional[int] = Field(default=None, ge=0)
    # raw KEY=VALUE items from --set, in order
    overrides: list[str] = Field(default_factory=list)
