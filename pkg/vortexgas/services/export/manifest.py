# vortexgas/services/export/manifest.py
from __future__ import annotations

import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from vortexgas import __version__


def _default(o: Any) -> Any:
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Path):
        return str(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_default) + "\n"


def write_json(payload: Any, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload), encoding="utf-8")
    return path


def write_manifest(
    out_dir: Path,
    *,
    command: str,
    resolved: dict[str, Any],
    seed: int,
    artifacts: list[str],
    started: datetime,
    wall_time: float,
    status: str = "ok",
    summary: dict[str, Any] | None = None,
) -> Path:
    """manifest.json: everything needed to rerun, plus timestamp and wall time."""
    return write_json(
        {
            "command": command,
            "status": status,
            "version": __version__,
            "python": sys.version.split()[0],
            "seed": seed,
            "config": resolved,
            "artifacts": sorted(artifacts),
            "summary": summary or {},
            "started_at": started.astimezone(timezone.utc).isoformat(),
            "wall_time_s": wall_time,
        },
        Path(out_dir) / "manifest.json",
    )


def write_error_record(out_dir: Path | None, record: dict[str, Any]) -> None:
    """error.json in the output directory (when writable) and one JSON line on stderr."""
    line = json.dumps(record, sort_keys=True, default=_default)
    print(line, file=sys.stderr)
    if out_dir is None:
        return
    try:
        write_json(record, Path(out_dir) / "error.json")
    except OSError:
        pass
