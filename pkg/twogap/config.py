"""Configuration management using Pydantic settings."""
from __future__ import annotations

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical defaults loaded from ``TWOGAP_*`` environment variables."""

    threads: int = 1
    log_level: str = "INFO"

    quad_tol: float = 1e-13
    quad_min_nodes: int = 16
    quad_max_nodes: int = 4096

    theta_tol: float = 1e-14

    dn_tol: float = 1e-12
    dn_max_iter: int = 200
    snap_tol: float = 1e-10

    robin_check_tol: float = 1e-8

    remez_guard_digits: int = 30
    remez_min_digits: int = 30
    remez_tol: float = 1e-24
    remez_max_iter: int = 200

    grid_size: int = 2000

    model_config = SettingsConfigDict(env_prefix="TWOGAP_", env_file=(".env",), extra="ignore")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return cached application settings."""

    settings = Settings()
    return settings
