# vortexgas/services/intake/config_loader.py
from __future__ import annotations

import json
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from vortexgas.errors import ConfigError
from vortexgas.schemas import RunDocument
from vortexgas.settings import S

logger = logging.getLogger(__name__)


# ---------- run documents ----------

def _validation_error(e: ValidationError, source: str) -> ConfigError:
    first = e.errors()[0]
    key = ".".join(str(p) for p in first["loc"])
    return ConfigError(
        f"{source}: {key}: {first['msg']}",
        key=key,
        errors=[{"key": ".".join(str(p) for p in err["loc"]), "message": err["msg"]} for err in e.errors()],
    )


def parse_override(item: str) -> tuple[str, Any]:
    """'dynamics.t_end=5' -> ('dynamics.t_end', 5); values are JSON scalars or plain strings."""
    key, sep, raw = item.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"override must look like key=value, got {item!r}", override=item)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    if isinstance(value, (dict, list)):
        raise ConfigError(f"override {key} must be a scalar", key=key)
    return key, value


def apply_overrides(doc: dict[str, Any], overrides: Mapping[str, Any]) -> dict[str, Any]:
    """Replace scalar leaves addressed by dotted paths. `doc` is the fully defaulted dump."""
    for key, value in overrides.items():
        node: Any = doc
        parts = key.split(".")
        for p in parts[:-1]:
            if not isinstance(node, dict) or not isinstance(node.get(p), dict):
                raise ConfigError(f"override {key}: no section {p!r}", key=key)
            node = node[p]
        leaf = parts[-1]
        if not isinstance(node, dict) or leaf not in node:
            raise ConfigError(f"override {key}: unknown key", key=key)
        if isinstance(node[leaf], (dict, list, tuple)):
            raise ConfigError(f"override {key}: only scalar fields can be overridden", key=key)
        node[leaf] = value
    return doc


def load_run_document(
    path: Path | None,
    overrides: Sequence[str] = (),
    *,
    seed: int | None = None,
) -> RunDocument:
    """Read, validate, apply --set overrides and --seed, validate again."""
    raw: dict[str, Any] = {}
    source = str(path) if path else "<defaults>"
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e.strerror}", path=str(path)) from None
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"{source}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}",
                line=e.lineno,
                column=e.colno,
            ) from None
        if not isinstance(raw, dict):
            raise ConfigError(f"{source}: top level must be a JSON object")

    try:
        doc = RunDocument.model_validate(raw)
    except ValidationError as e:
        raise _validation_error(e, source) from None

    parsed = dict(parse_override(item) for item in overrides)
    if seed is not None:
        parsed["seed"] = seed
    if not parsed:
        return doc

    dumped = apply_overrides(doc.model_dump(mode="json"), parsed)
    try:
        return RunDocument.model_validate(dumped)
    except ValidationError as e:
        raise _validation_error(e, f"{source} (after overrides)") from None


# ---------- Landau-Ginzburg presets ----------

def load_presets(path: Path | None = None) -> dict[str, dict[str, Any]]:
    path = Path(path or S.presets_path)
    if not path.exists():
        raise ConfigError(f"preset file not found: {path}", path=str(path))
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"preset file {path} is not valid YAML: {e}", path=str(path)) from None
    presets = data.get("presets", {})
    if not isinstance(presets, dict):
        raise ConfigError(f"preset file {path}: 'presets' must be a mapping", path=str(path))
    return presets


def get_preset(name: str, path: Path | None = None) -> dict[str, Any]:
    presets = load_presets(path)
    if name not in presets:
        raise ConfigError(
            f"unknown Landau-Ginzburg preset {name!r}",
            key="landau.preset",
            available=sorted(presets),
        )
    return dict(presets[name])
