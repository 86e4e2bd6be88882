# vortexgas/services/export/csv_io.py
# -------------------------------------------------
# CSV artifacts. Floats carry 17 significant digits with '.' decimals;
# missing values are empty fields. Identical inputs give identical bytes.
# -------------------------------------------------

from __future__ import annotations

from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
import pandas as pd

from vortexgas.errors import ConfigError
from vortexgas.services.core.vortex import Configuration
from vortexgas.services.dynamics.integrator import TrajectoryState
from vortexgas.services.ensemble.metropolis import EnsembleStats
from vortexgas.services.flow.grid import FieldGrid
from vortexgas.services.geometry.surfaces import Geometry
from vortexgas.services.landau.model import OrderParameterResult

FLOAT_FORMAT = "%.17g"

TRAJECTORY_COLUMNS = ["time", "vortex_index", "charge", "re", "im"]
FIELD_COLUMNS = ["x", "y", "u", "v"]
SWEEP_COLUMNS = ["T", "psi_min", "branch", "F_min"]
SCAN_COLUMNS = ["beta", "mean_energy", "acceptance", "dipole_fraction", "mean_nn_distance"]


def write_frame(df: pd.DataFrame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    return path


def snapshot_rows(snapshots: Iterable[tuple[float, Configuration]]) -> pd.DataFrame:
    """One row per vortex; a state with no vortices keeps its time in a row with empty fields."""
    rows = []
    for t, config in snapshots:
        if len(config) == 0:
            rows.append({"time": float(t), "vortex_index": pd.NA, "charge": pd.NA, "re": np.nan, "im": np.nan})
        rows.extend(
            {"time": float(t), "vortex_index": k, "charge": v.charge, "re": v.position.real, "im": v.position.imag}
            for k, v in enumerate(config)
        )
    return pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS).astype(
        {"time": "float64", "vortex_index": "Int64", "charge": "Int64", "re": "float64", "im": "float64"}
    )


def write_trajectory_csv(states: Sequence[TrajectoryState], path: Path) -> Path:
    return write_frame(snapshot_rows((s.time, s.config) for s in states), path)


def write_snapshots_csv(snapshots: Sequence[tuple[float, Configuration]], path: Path) -> Path:
    """Ensemble dumps in trajectory layout; `time` holds the sweep number."""
    return write_frame(snapshot_rows(snapshots), path)


def read_trajectory_csv(path: Path, geometry: Geometry | None = None) -> list[tuple[float, Configuration]]:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"trajectory file not found: {path}", path=str(path))
    df = pd.read_csv(path)
    missing = [c for c in TRAJECTORY_COLUMNS if c not in df.columns]
    if missing:
        raise ConfigError(f"trajectory file {path} lacks columns {missing}", path=str(path), missing=missing)
    out: list[tuple[float, Configuration]] = []
    for t, g in df.sort_values(["time", "vortex_index"], kind="stable").groupby("time", sort=True):
        g = g.dropna(subset=["charge"])
        config = Configuration.from_arrays(
            g["re"].to_numpy() + 1j * g["im"].to_numpy(),
            g["charge"].to_numpy().astype(np.int64),
            geometry,
        )
        out.append((float(t), config))
    return out


def write_field_csv(grid: FieldGrid, path: Path) -> Path:
    """(x, y, u, v) of the induced velocity, row-major in y then x."""
    X, Y = np.meshgrid(grid.x, grid.y, indexing="xy")
    w = grid.velocity()
    df = pd.DataFrame({
        "x": X.ravel(),
        "y": Y.ravel(),
        "u": w.real.ravel(),
        "v": w.imag.ravel(),
    }, columns=FIELD_COLUMNS)
    return write_frame(df, path)


def write_sweep_csv(results: Sequence[OrderParameterResult], path: Path) -> Path:
    return write_frame(pd.DataFrame([r.to_row() for r in results], columns=SWEEP_COLUMNS), path)


def write_scan_csv(stats: Sequence[EnsembleStats], path: Path) -> Path:
    return write_frame(pd.DataFrame([s.to_row() for s in stats], columns=SCAN_COLUMNS), path)
