# vortexgas/settings.py
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

REPO_ROOT = Path(__file__).resolve().parents[1]


class Settings(BaseSettings):
    # pydantic-settings v2 config
    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=False,   # env var names can be upper/lower
        extra="ignore",         # ignore unknown env keys instead of crashing
        populate_by_name=True,
    )

    # ---- General
    log_level: str = Field(default="INFO", alias="VORTEXGAS_LOG_LEVEL")

    # ---- Parallelism (caps sweeps / scans; 1 = run inline)
    threads: int = Field(default=1, ge=1, alias="VORTEXGAS_THREADS")

    # ---- Numerics
    coincidence_eps: float = Field(default=1e-12, gt=0.0, alias="VORTEXGAS_COINCIDENCE_EPS")

    # ---- Presets
    presets_path: Path = Field(
        default=REPO_ROOT / "config" / "presets" / "landau_ginzburg.yaml",
        alias="VORTEXGAS_PRESETS_PATH",
    )


# module-level singleton
S = Settings()
