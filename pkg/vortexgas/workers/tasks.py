# vortexgas/workers/tasks.py
# -----------------------------------------------
# One task per CLI subcommand:
#   simulate | sample | scan | field | order-parameter | check
# Each task reads the resolved run document, calls into services/, writes
# its artifacts under the output directory and returns (artifacts, summary).
# `execute` wraps a task with the manifest and the error record.
# -----------------------------------------------

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from vortexgas.errors import (
    ConfigError,
    GeometryError,
    InadmissibleError,
    VortexGasError,
)
from vortexgas.schemas import RunConfig, RunDocument
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.dynamics.audit import conservation_report
from vortexgas.services.dynamics.integrator import IntegratorOptions, integrate
from vortexgas.services.ensemble.metropolis import EnsembleSpec, run_chain, temperature_scan
from vortexgas.services.export.csv_io import (
    read_trajectory_csv,
    write_field_csv,
    write_scan_csv,
    write_snapshots_csv,
    write_sweep_csv,
    write_trajectory_csv,
)
from vortexgas.services.export.manifest import write_error_record, write_json, write_manifest
from vortexgas.services.flow.contour import Circle, circulation_report, phase_winding
from vortexgas.services.flow.divisor import Divisor, FlowPotential, chern_class, divisor_from_configuration
from vortexgas.services.flow.grid import field_grid
from vortexgas.services.geometry.surfaces import Geometry
from vortexgas.services.geometry.topology import admissibility
from vortexgas.services.intake.config_loader import get_preset, load_run_document
from vortexgas.services.landau.model import LGModel
from vortexgas.services.landau.solver import relevance_check, temperature_sweep

logger = logging.getLogger(__name__)

TaskResult = tuple[list[str], dict[str, Any]]

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_INADMISSIBLE = 3
EXIT_NUMERICAL = 4


# ---------- document -> domain objects ----------

def geometry_from_doc(doc: RunDocument) -> Geometry:
    g = doc.geometry
    return Geometry.from_descriptor({"kind": g.kind, "L1": g.L1, "L2": g.L2, "check_aspect": g.check_aspect})


def configuration_from_doc(doc: RunDocument) -> Configuration:
    config = Configuration.from_records([v.model_dump() for v in doc.vortices], geometry_from_doc(doc))
    c = doc.geometry.compactify
    if c is not None:
        config = config.compactified(c.L1, c.L2, check_aspect=doc.geometry.check_aspect)
    return config


def integrator_options_from_doc(doc: RunDocument) -> IntegratorOptions:
    return IntegratorOptions(**doc.dynamics.model_dump(exclude={"t_end"}))


def ensemble_spec_from_doc(doc: RunDocument, geometry: Geometry, beta: float | None = None) -> EnsembleSpec:
    e = doc.ensemble
    return EnsembleSpec(
        n_pairs=e.n_pairs,
        geometry=geometry,
        beta=e.beta if beta is None else beta,
        n_sweeps=e.n_sweeps,
        n_burn=e.n_burn,
        proposal_scale=e.proposal_scale,
        hard_core=e.hard_core,
        r_pair=e.r_pair,
        seed=doc.seed,
    )


def model_from_doc(doc: RunDocument) -> LGModel:
    lg = doc.landau
    if lg.params is not None:
        return LGModel.from_params(lg.params.model_dump(exclude_none=True))
    if lg.preset is None:
        raise ConfigError("landau needs either a preset or params", key="landau")
    return LGModel.from_params(get_preset(lg.preset), name=lg.preset)


def temperatures_from_doc(doc: RunDocument) -> list[float]:
    lg = doc.landau
    if lg.temperatures is not None:
        return list(lg.temperatures)
    if lg.T_max < lg.T_min:
        raise ConfigError("landau.T_max must be >= landau.T_min", key="landau.T_max")
    return [float(t) for t in np.linspace(lg.T_min, lg.T_max, lg.n_points)]


# ---------- tasks ----------

def run_simulate(doc: RunDocument, out: Path) -> TaskResult:
    config = configuration_from_doc(doc)
    states = integrate(config, doc.dynamics.t_end, integrator_options_from_doc(doc))
    write_trajectory_csv(states, out / "trajectory.csv")
    write_json(
        {
            "geometry": config.geometry.to_descriptor(),
            "admissibility": admissibility(config.geometry, config).to_dict(),
            "states": [s.to_dict() for s in states],
        },
        out / "trajectory.json",
    )
    n_events = sum(len(s.events) for s in states)
    return ["trajectory.csv", "trajectory.json"], {
        "n_states": len(states),
        "n_events": n_events,
        "final_vortices": len(states[-1].config),
    }


def _ensemble_geometry(doc: RunDocument) -> Geometry:
    geometry = configuration_from_doc(doc).geometry
    report = admissibility(geometry, Configuration(geometry=geometry))
    if not report.dynamics_supported:
        raise InadmissibleError("; ".join(report.reasons), **report.to_dict())
    if not geometry.is_torus:
        raise GeometryError(
            "ensemble sampling needs a torus geometry (set geometry.kind=torus or geometry.compactify)",
            kind=geometry.kind.value,
        )
    return geometry


def run_sample(doc: RunDocument, out: Path) -> TaskResult:
    spec = ensemble_spec_from_doc(doc, _ensemble_geometry(doc))
    stats, dumps = run_chain(spec, dump_every=doc.ensemble.dump_every)
    artifacts = ["sample.csv", "sample.json"]
    write_scan_csv([stats], out / "sample.csv")
    write_json({"spec": spec.to_dict(), "stats": stats.to_row() | {
        "samples": stats.samples,
        "proposals": stats.proposals,
        "hard_core_rejections": stats.hard_core_rejections,
    }}, out / "sample.json")
    if dumps:
        write_snapshots_csv([(float(s), c) for s, c in dumps], out / "samples.csv")
        artifacts.append("samples.csv")
    return artifacts, stats.to_row()


def run_scan(doc: RunDocument, out: Path) -> TaskResult:
    template = ensemble_spec_from_doc(doc, _ensemble_geometry(doc))
    stats = temperature_scan(template, doc.ensemble.betas)
    write_scan_csv(stats, out / "scan.csv")
    return ["scan.csv"], {"n_betas": len(stats)}


def run_field(doc: RunDocument, out: Path) -> TaskResult:
    f = doc.field
    if f.divisor is not None:
        divisor = Divisor.from_records([p.model_dump() for p in f.divisor])
    else:
        config = configuration_from_doc(doc)
        if not config.geometry.is_plane:
            raise GeometryError("flow potentials are built on the plane", kind=config.geometry.kind.value)
        divisor = divisor_from_configuration(config)
    potential = FlowPotential(divisor)

    grid = field_grid(potential, f.window, f.resolution)
    write_field_csv(grid, out / "field.csv")

    contours = []
    for c in f.contours:
        circle = Circle(complex(c.center_re, c.center_im), c.radius)
        rep = circulation_report(potential, circle, f.n_points)
        contours.append({
            "center": circle.center,
            "radius": circle.radius,
            "winding": rep.winding,
            "circulation": rep.circulation,
            "raw": rep.raw,
            "residual": rep.residual,
            "n_points": rep.n_points,
            "phase_winding": phase_winding(potential, circle, f.n_points),
        })
    write_json(
        {
            "divisor": divisor.to_records(),
            "chern_class": chern_class(divisor),
            "dipole_moment": divisor.dipole_moment(),
            "missing_nodes": int(grid.missing.sum()),
            "contours": contours,
        },
        out / "field.json",
    )
    return ["field.csv", "field.json"], {"chern_class": chern_class(divisor), "n_contours": len(contours)}


def run_order_parameter(doc: RunDocument, out: Path) -> TaskResult:
    model = model_from_doc(doc)
    temps = temperatures_from_doc(doc)
    results = temperature_sweep(model, temps)
    reports = [relevance_check(model, T) for T in temps]
    write_sweep_csv(results, out / "order_parameter.csv")
    write_json(
        {
            "model": model.name,
            "T_c": model.T_c,
            "relevant_everywhere": all(r.relevant for r in reports),
            "reports": [r.to_dict() for r in reports],
        },
        out / "relevance.json",
    )
    return ["order_parameter.csv", "relevance.json"], {
        "n_points": len(results),
        "superfluid_points": sum(r.psi_min > 0.0 for r in results),
    }


def run_check(doc: RunDocument, out: Path, *, base_dir: Path | None = None) -> TaskResult:
    geometry = configuration_from_doc(doc).geometry
    if doc.check.trajectory is not None:
        path = Path(doc.check.trajectory)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        snapshots = read_trajectory_csv(path, geometry)
    else:
        states = integrate(configuration_from_doc(doc), doc.dynamics.t_end, integrator_options_from_doc(doc))
        snapshots = [(s.time, s.config) for s in states]
    report = conservation_report(snapshots)
    write_json(report.to_dict(), out / "check.json")
    return ["check.json"], report.to_dict()["drifts"]


TASKS: dict[str, Callable[..., TaskResult]] = {
    "simulate": run_simulate,
    "sample": run_sample,
    "scan": run_scan,
    "field": run_field,
    "order-parameter": run_order_parameter,
    "check": run_check,
}


# ---------- orchestration ----------

def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (ConfigError, ValidationError)):
        return EXIT_CONFIG
    if isinstance(exc, (InadmissibleError, GeometryError)):
        return EXIT_INADMISSIBLE
    if isinstance(exc, VortexGasError):
        return EXIT_NUMERICAL
    return EXIT_UNEXPECTED


def error_record(exc: BaseException, command: str | None) -> dict[str, Any]:
    if isinstance(exc, VortexGasError):
        record = exc.to_record()
    else:
        record = {"error": "unexpected", "message": f"{type(exc).__name__}: {exc}"}
    record["command"] = command
    record["exit_code"] = exit_code_for(exc)
    return record


def execute(rc: RunConfig) -> int:
    """Run one command end to end; never raises."""
    out = Path(rc.out)
    started = datetime.now(timezone.utc)
    t0 = time.perf_counter()
    logger.info("%s: start (config=%s, out=%s)", rc.command, rc.config, out)
    try:
        doc = load_run_document(rc.config, rc.overrides, seed=rc.seed)
        if doc.command is not None and doc.command != rc.command:
            raise ConfigError(
                f"config is for {doc.command!r}, not {rc.command!r}",
                key="command",
            )
        out.mkdir(parents=True, exist_ok=True)
        task = TASKS[rc.command]
        if rc.command == "check":
            base = Path(rc.config).parent if rc.config else None
            artifacts, summary = task(doc, out, base_dir=base)
        else:
            artifacts, summary = task(doc, out)
        write_manifest(
            out,
            command=rc.command,
            resolved=doc.model_dump(mode="json"),
            seed=doc.seed,
            artifacts=artifacts,
            started=started,
            wall_time=time.perf_counter() - t0,
            summary=summary,
        )
    except Exception as e:  # every failure leaves a record
        record = error_record(e, rc.command)
        logger.error("%s: failed (%s): %s", rc.command, record["error"], record["message"])
        if exit_code_for(e) == EXIT_UNEXPECTED:
            logger.exception("unexpected failure")
        write_error_record(out, record)
        return record["exit_code"]

    logger.info("%s: done in %.3fs -> %s", rc.command, time.perf_counter() - t0, out)
    return EXIT_OK
