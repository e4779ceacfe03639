from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Values come from the environment (or a local .env file) with the KLESHCHEV_ prefix,
    # e.g. KLESHCHEV_SEED=7. CLI flags still win over anything set here.
    model_config = SettingsConfigDict(env_file=".env", env_prefix="KLESHCHEV_", extra="ignore")

    # --- RANDOMIZED CHECKS ---
    SEED: int = 20240601
    PATH_SAMPLES: int = 10

    # --- VERIFY GRID ---
    MAX_N: int = 6
    WORKERS: int = 1

    # (p, ell) pairs for single-orbit environments
    K1_GRID: list[tuple[int, int]] = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)]
    # (p, k, ell) triples for multi-orbit environments; d = p / k
    MULTI_ORBIT_GRID: list[tuple[int, int, int]] = [(4, 2, 1), (4, 2, 2), (6, 2, 1), (6, 3, 1)]

    # --- OUTPUT ---
    OUTPUT_FORMAT: Literal["table", "json"] = "table"
    LOG_LEVEL: str = "WARNING"


settings = Settings()
